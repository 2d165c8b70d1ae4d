#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ahpeval {

enum class TruthMode { levels, ranking };

std::string_view to_string(TruthMode mode);
TruthMode truth_mode_from_string(std::string_view s);

// Ground truth per response id: ordinal levels (ties allowed, higher is
// better) or a strict ranking by positions 1..n (1 is best).
struct GroundTruth {
  TruthMode mode = TruthMode::levels;
  std::map<std::string, int> values;

  // Monotone goodness: higher means better under either mode.
  double goodness(const std::string& id) const;

  // Ground-truth gap for significance tests: level difference, or the
  // number of rank positions a is better than b by.
  int gap(const std::string& better, const std::string& worse) const;

  void validate(const std::vector<std::string>& ids) const;
};

struct Response {
  std::string id;
  std::string text;
};

struct ResponseSet {
  std::string question;
  std::vector<Response> responses;
  std::optional<GroundTruth> ground_truth;

  std::size_t size() const noexcept { return responses.size(); }
  const Response& at(std::size_t i) const { return responses.at(i); }
  std::size_t index_of(const std::string& id) const;
  std::vector<std::string> ids() const;

  void validate() const;
};

nlohmann::json dataset_to_json(const ResponseSet& dataset);
ResponseSet dataset_from_json(const nlohmann::json& doc, const std::string& source);

ResponseSet load_dataset(const std::filesystem::path& path);
void save_dataset(const ResponseSet& dataset, const std::filesystem::path& path);

// Content digest over question, ids, texts, and ground truth; used for
// run-state config matching.
std::string dataset_digest(const ResponseSet& dataset);

}  // namespace ahpeval
