#pragma once

#include <map>
#include <string>
#include <vector>

#include "ahpeval/cache.hpp"
#include "ahpeval/dataset.hpp"
#include "ahpeval/judge.hpp"
#include "ahpeval/pipeline.hpp"

namespace ahpeval {

struct BaselineResult {
  std::string method;  // pairwise | scoring | few-shot | cefr-level
  std::vector<double> scores;  // aligned with dataset response order
  std::map<std::string, std::string> raw_by_id;  // per-response raw outputs
  std::vector<JudgeRecord> records;              // pairwise only
  std::size_t backend_calls = 0;
  std::size_t cache_hits = 0;
};

// One criterion-free judge call per unordered pair; scores are the
// L1-normalized principal eigenvector of the induced reciprocal matrix.
BaselineResult pairwise_baseline(const ResponseSet& dataset, Backend& backend,
                                 JudgmentCache& cache, const PipelineConfig& config = {});

// One call per response; integer score in [0, 100], one re-prompt on an
// out-of-range or unparseable reply, then a parse failure naming the
// response.
BaselineResult scoring_baseline(const ResponseSet& dataset, Backend& backend);

// One call per response with two exemplars per level drawn from the
// ground truth (levels mode: two per distinct level; ranking mode: the
// two best, two at the top-33% boundary, two at the top-66% boundary,
// and the two worst, as levels 4..1).
BaselineResult few_shot_baseline(const ResponseSet& dataset, Backend& backend);

// One call per response against CEFR level definitions; only valid for
// essay-type datasets (levels-mode ground truth). The bracket maps level
// names (worst to best) onto ordinals 1..4.
BaselineResult cefr_baseline(const ResponseSet& dataset, Backend& backend,
                             const std::vector<std::string>& bracket = {"A2", "B1", "B2",
                                                                        "C1"});

// Exposed for tests: exemplar construction per ground-truth mode.
std::vector<Exemplar> build_exemplars(const ResponseSet& dataset, int& min_level,
                                      int& max_level);

}  // namespace ahpeval
