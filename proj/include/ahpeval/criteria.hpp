#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahpeval/dataset.hpp"
#include "ahpeval/judge.hpp"

namespace ahpeval {

enum class CriteriaProvenance { generated, user_supplied };

// Ranked evaluation criteria; index 0 is the most important.
struct CriterionSet {
  std::vector<std::string> labels;
  CriteriaProvenance provenance = CriteriaProvenance::user_supplied;
  std::size_t m = 0;          // seed-sample size used for generation
  std::uint64_t seed = 0;
  std::string backend_id;
  std::string model_id;

  std::size_t size() const noexcept { return labels.size(); }
  void validate() const;  // non-empty, distinct after case-folding/trimming
};

nlohmann::json criteria_to_json(const CriterionSet& set);
CriterionSet criteria_from_json(const nlohmann::json& doc, const std::string& source);
CriterionSet load_criteria(const std::filesystem::path& path);
void save_criteria(const CriterionSet& set, const std::filesystem::path& path);
std::string criteria_digest(const CriterionSet& set);

// Uniform sample of m response indices without replacement, reproducible
// from the seed; 2 <= m <= n.
std::vector<std::size_t> sample_seed_responses(const ResponseSet& dataset, std::size_t m,
                                               std::uint64_t seed);

// All m(m-1) ordered pairs of the sampled indices, lexicographic.
std::vector<std::pair<std::size_t, std::size_t>> ordered_pairs(
    const std::vector<std::size_t>& sample);

struct ReasonBatch {
  std::string first_id, second_id;
  std::vector<std::string> reasons;  // 1..5 snippets after the tolerant parse
  std::string raw;
};

// Asks why `first` beats `second` and parses the numbered/bulleted list;
// snippets shorter than 3 words are dropped as noise.
ReasonBatch elicit_reasons(Backend& backend, const std::string& question,
                           const Response& first, const Response& second);

struct CriteriaGenOptions {
  std::size_t m = 10;
  std::size_t k = 10;
  std::uint64_t seed = 0;
  // Rendered-prompt budget; pools that exceed it are summarized in
  // chunks of 100 reasons and then merge-summarized.
  std::size_t context_budget_chars = 48000;
};

// Feeds the reason pool to the backend for ranking and deduplication;
// locally verifies distinctness and count.
CriterionSet summarize_criteria(Backend& backend, const std::string& question,
                                const std::vector<std::string>& reasons, std::size_t k,
                                std::size_t context_budget_chars = 48000);

// The whole criteria-generation phase: sample, elicit reasons over all
// ordered pairs, summarize to the top k.
CriterionSet generate_criteria(const ResponseSet& dataset, Backend& backend,
                               const CriteriaGenOptions& options = {});

}  // namespace ahpeval
