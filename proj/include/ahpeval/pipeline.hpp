#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahpeval/ahp.hpp"
#include "ahpeval/cache.hpp"
#include "ahpeval/criteria.hpp"
#include "ahpeval/dataset.hpp"
#include "ahpeval/judge.hpp"
#include "ahpeval/matrix.hpp"

namespace ahpeval {

struct PipelineConfig {
  std::size_t in_flight = 4;  // concurrent judge calls
  ScaleConvention convention = ScaleConvention::reciprocal;
  double requests_per_minute = 0.0;  // 0 = unlimited
  bool progress = false;             // "criterion c/k, pair p/P" on stderr
};

// All n(n-1)/2 unordered pairs, lexicographic, lower index first.
std::vector<std::pair<std::size_t, std::size_t>> enumerate_pairs(std::size_t n);

struct EvaluationRun {
  std::string run_id;
  std::string dataset_digest;
  std::string criteria_digest;
  std::string backend_id, model_id, template_version;
  nlohmann::json config_snapshot;
  std::size_t cells_total = 0;
  std::size_t cells_completed = 0;
  std::string status;  // "complete" or "partial"
  std::string started, updated;
};

nlohmann::json run_to_json(const EvaluationRun& run);
EvaluationRun run_from_json(const nlohmann::json& doc);
void save_run_state(const EvaluationRun& run, const std::filesystem::path& path);
EvaluationRun load_run_state(const std::filesystem::path& path);

// Resolves every (criterion, pair) cell through the cache or a fresh
// judge call; criteria-major, pairs lexicographic. A criterion of
// nullopt is the criterion-free comparison used by the pairwise
// baseline. Successful records are appended to the cache before any
// failure is rethrown, so an aborted run resumes from where it stopped.
struct ComparisonSchedule {
  std::vector<JudgeRecord> records;  // cell order
  std::size_t backend_calls = 0;
  std::size_t cache_hits = 0;
};

ComparisonSchedule schedule_comparisons(
    const ResponseSet& dataset, const std::vector<std::optional<std::string>>& criteria,
    Backend& backend, JudgmentCache& cache, const PipelineConfig& config = {});

struct EvaluationOutcome {
  ComparisonTensor tensor;
  FinalScores finals;
  EvaluationRun run;
  std::vector<JudgeRecord> records;  // criteria-major, pair order
  std::size_t backend_calls = 0;
  std::size_t cache_hits = 0;
};

// The evaluation phase end to end: schedules k*n(n-1)/2 cells, builds
// the tensor, and aggregates eigenvector scores under the rank-order
// criteria weights. Run state is persisted to `run_state_path` when
// non-empty, including on abort.
EvaluationOutcome run_evaluation(const ResponseSet& dataset, const CriterionSet& criteria,
                                 Backend& backend, JudgmentCache& cache,
                                 const PipelineConfig& config = {},
                                 const std::filesystem::path& run_state_path = {});

// Validates the persisted run state against the current inputs (digest
// diff on mismatch), then continues scheduling pending cells.
EvaluationOutcome resume(const std::filesystem::path& run_state_path,
                         const ResponseSet& dataset, const CriterionSet& criteria,
                         Backend& backend, JudgmentCache& cache,
                         const PipelineConfig& config = {});

}  // namespace ahpeval
