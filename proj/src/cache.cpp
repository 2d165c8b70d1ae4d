#include "ahpeval/cache.hpp"

#include <iostream>

#include "ahpeval/error.hpp"

namespace ahpeval {

using nlohmann::json;

json judge_record_to_json(const JudgeRecord& record) {
  json doc = {{"key", record.key},
              {"backend", record.backend_id},
              {"model", record.model_id},
              {"template", record.template_version},
              {"pair", {record.id_a, record.id_b}},
              {"raw", record.raw},
              {"parsed", std::string(to_string(record.parsed))},
              {"timestamp", record.timestamp},
              {"attempts", record.attempts},
              {"tokens", record.tokens}};
  if (record.criterion) doc["criterion"] = *record.criterion;
  return doc;
}

JudgeRecord judge_record_from_json(const json& doc) {
  JudgeRecord record;
  record.key = doc.at("key").get<std::string>();
  record.backend_id = doc.at("backend").get<std::string>();
  record.model_id = doc.at("model").get<std::string>();
  record.template_version = doc.at("template").get<std::string>();
  if (doc.contains("criterion")) record.criterion = doc.at("criterion").get<std::string>();
  record.id_a = doc.at("pair").at(0).get<std::string>();
  record.id_b = doc.at("pair").at(1).get<std::string>();
  record.raw = doc.at("raw").get<std::string>();
  record.parsed = judgment_from_string(doc.at("parsed").get<std::string>());
  record.timestamp = doc.value("timestamp", "");
  record.attempts = doc.value("attempts", 1);
  record.tokens = doc.value("tokens", 0L);
  // The parsed field must re-derive from the raw output.
  if (parse_judgment(record.raw) != record.parsed)
    throw CacheError("cache record for pair (" + record.id_a + "," + record.id_b +
                     ") has a parsed judgment inconsistent with its raw text");
  return record;
}

JudgmentCache::JudgmentCache(std::filesystem::path path) : path_(std::move(path)) {
  if (!std::filesystem::exists(path_)) return;
  std::ifstream in(path_);
  if (!in) throw CacheError("cannot open cache file " + path_.string());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    try {
      JudgeRecord record = judge_record_from_json(json::parse(lines[i]));
      records_[record.key] = std::move(record);
    } catch (const json::exception& e) {
      if (i + 1 == lines.size()) {
        std::cerr << "warning: dropping corrupt trailing cache line " << (i + 1)
                  << " in " << path_.string() << "\n";
        break;
      }
      throw CacheError(path_.string() + ":" + std::to_string(i + 1) +
                       ": corrupt cache record: " + e.what());
    }
  }
}

std::optional<JudgeRecord> JudgmentCache::find(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = records_.find(key);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void JudgmentCache::append(const JudgeRecord& record) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!path_.empty()) {
    if (!out_.is_open()) {
      if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
      out_.open(path_, std::ios::app);
      if (!out_) throw CacheError("cannot open cache file for append: " + path_.string());
    }
    out_ << judge_record_to_json(record).dump() << "\n";
    out_.flush();
    if (!out_) throw CacheError("failed writing cache record to " + path_.string());
  }
  records_[record.key] = record;
}

std::size_t JudgmentCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_.size();
}

}  // namespace ahpeval
