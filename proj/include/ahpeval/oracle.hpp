#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahpeval/judge.hpp"

namespace ahpeval {

// Deterministic test double for the LLM. Hidden per-response quality
// drives every request kind; the backend renders canonical text so its
// output flows through the ordinary parsers.
struct OracleProfile {
  // id -> per-criterion quality on a unit scale. A length-1 vector is
  // shared across all criteria; longer vectors require criteria_labels.
  std::map<std::string, std::vector<double>> quality;
  std::vector<std::string> criteria_labels;

  double delta_small = 0.05;  // |d| <= delta_small is a tie
  double delta_big = 0.3;     // d > delta_big is a strong win
  double noise_amplitude = 0.0;
  std::uint64_t seed = 0;

  // Canned text for the criteria-generation phase.
  std::vector<std::string> reason_fixtures;
  std::vector<std::string> criteria_fixtures;

  void validate() const;

  nlohmann::json to_json() const;
  static OracleProfile from_json(const nlohmann::json& doc);
  static OracleProfile load(const std::filesystem::path& path);
};

class OracleBackend : public Backend {
 public:
  explicit OracleBackend(OracleProfile profile);

  std::string backend_id() const override { return "oracle"; }
  std::string model_id() const override { return "scripted"; }

  CompletionResult compare_raw(const JudgeRequest& request, bool strict_hint) override;
  CompletionResult reasons_raw(const ReasonRequest& request, bool strict_hint) override;
  CompletionResult summarize_raw(const SummarizeRequest& request,
                                 bool strict_hint) override;
  CompletionResult score_raw(const ScoreRequest& request, bool strict_hint) override;
  CompletionResult level_raw(const LevelRequest& request, bool strict_hint) override;
  CompletionResult cefr_raw(const CefrRequest& request, bool strict_hint) override;

  const OracleProfile& profile() const noexcept { return profile_; }

 private:
  double quality_of(const std::string& id,
                    const std::optional<std::string>& criterion) const;
  OracleProfile profile_;
};

}  // namespace ahpeval
