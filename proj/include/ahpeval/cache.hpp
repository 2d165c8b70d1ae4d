#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "ahpeval/judge.hpp"

namespace ahpeval {

// Append-only JSON Lines store of JudgeRecords keyed by cache-key
// digest. Loading drops a corrupt trailing line (partial write) with a
// warning; corruption elsewhere is an error. Appends are serialized and
// flushed line-by-line so any crash leaves a parseable prefix.
class JudgmentCache {
 public:
  // In-memory only; nothing is persisted.
  JudgmentCache() = default;

  // Loads existing records from `path` (created on first append).
  explicit JudgmentCache(std::filesystem::path path);

  std::optional<JudgeRecord> find(const std::string& key) const;
  void append(const JudgeRecord& record);

  std::size_t size() const;
  const std::filesystem::path& path() const noexcept { return path_; }

  JudgmentCache(const JudgmentCache&) = delete;
  JudgmentCache& operator=(const JudgmentCache&) = delete;

 private:
  std::filesystem::path path_;  // empty = memory-only
  std::ofstream out_;
  std::map<std::string, JudgeRecord> records_;
  mutable std::mutex mu_;
};

nlohmann::json judge_record_to_json(const JudgeRecord& record);
JudgeRecord judge_record_from_json(const nlohmann::json& doc);

}  // namespace ahpeval
