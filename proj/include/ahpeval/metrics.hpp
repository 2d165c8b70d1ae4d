#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ahpeval/dataset.hpp"
#include "ahpeval/judge.hpp"
#include "ahpeval/matrix.hpp"

namespace ahpeval {

// Fraction of strictly ground-truth-ordered pairs whose order the
// evaluated scores preserve. Pairs tied in the truth are excluded from
// the denominator; pairs tied in the scores count as non-concordant.
double concordance_index(const std::map<std::string, double>& scores,
                         const GroundTruth& truth);

// Concordance restricted to pairs whose ground-truth gap is at least
// `gap` (levels: level difference; ranking: rank-position difference).
double soft_concordance_index(const std::map<std::string, double>& scores,
                              const GroundTruth& truth, int gap);

// Paper defaults: level gap >= 2, rank gap >= 20.
int default_sci_gap(TruthMode mode);

struct MetricReport {
  double ci = 0.0;
  double sci = 0.0;
  int sci_gap = 0;
  long ci_concordant = 0, ci_total = 0;
  long sci_concordant = 0, sci_total = 0;
};

MetricReport evaluate_metrics(const std::map<std::string, double>& scores,
                              const GroundTruth& truth,
                              std::optional<int> sci_gap = std::nullopt);

// Percentage of records per judgment option, reported to 0.1 and summing
// to exactly 100.0 (largest-remainder apportionment).
std::map<JudgmentScale, double> judgment_distribution(
    const std::vector<JudgeRecord>& records);

struct AblationConfig {
  std::size_t max_subsets = 256;  // enumerate when C(k,j) fits, else sample
  std::uint64_t seed = 0;
};

struct AblationRow {
  std::size_t subset_size = 0;
  std::size_t subsets = 0;
  double min = 0, q1 = 0, mean = 0, q3 = 0, max = 0;
  std::vector<double> values;  // per-subset CI, enumeration order
};

// CI distribution over subsets of `subset_size` criteria. Each subset
// keeps the original rank order, so its weights are the rank-order
// weights of its size; the per-criterion score rows are reused, never
// re-queried.
AblationRow criteria_ablation(const ComparisonTensor& tensor, const ResponseSet& dataset,
                              std::size_t subset_size, const AblationConfig& config = {});

}  // namespace ahpeval
