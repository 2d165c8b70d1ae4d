#include "ahpeval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "ahpeval/ahp.hpp"
#include "ahpeval/error.hpp"

namespace ahpeval {

namespace {

struct PairCounts {
  long concordant = 0;
  long total = 0;
};

// Ordered-pair enumeration of Eqs. (7)-(8); `qualifies` decides whether
// the ground truth ranks i strictly (or significantly) above j.
template <typename Qualifier>
PairCounts count_pairs(const std::map<std::string, double>& scores,
                       const GroundTruth& truth, Qualifier qualifies) {
  for (const auto& [id, value] : truth.values) {
    if (!scores.count(id))
      throw ValidationError("scores are missing response id \"" + id + "\"");
  }
  PairCounts counts;
  for (const auto& [i, gi] : truth.values) {
    for (const auto& [j, gj] : truth.values) {
      if (i == j) continue;
      if (!qualifies(i, j)) continue;
      ++counts.total;
      if (scores.at(i) > scores.at(j)) ++counts.concordant;
    }
  }
  return counts;
}

}  // namespace

double concordance_index(const std::map<std::string, double>& scores,
                         const GroundTruth& truth) {
  PairCounts counts = count_pairs(scores, truth, [&](const auto& i, const auto& j) {
    return truth.goodness(i) > truth.goodness(j);
  });
  if (counts.total == 0)
    throw MetricError("concordance index undefined: ground truth has no strictly "
                      "ordered pairs");
  return static_cast<double>(counts.concordant) / static_cast<double>(counts.total);
}

double soft_concordance_index(const std::map<std::string, double>& scores,
                              const GroundTruth& truth, int gap) {
  if (gap < 1) throw ConfigError("significance gap must be at least 1");
  PairCounts counts = count_pairs(scores, truth, [&](const auto& i, const auto& j) {
    return truth.goodness(i) > truth.goodness(j) && truth.gap(i, j) >= gap;
  });
  if (counts.total == 0)
    throw MetricError("soft concordance index undefined: no pair reaches the "
                      "significance gap " +
                      std::to_string(gap));
  return static_cast<double>(counts.concordant) / static_cast<double>(counts.total);
}

int default_sci_gap(TruthMode mode) { return mode == TruthMode::levels ? 2 : 20; }

MetricReport evaluate_metrics(const std::map<std::string, double>& scores,
                              const GroundTruth& truth, std::optional<int> sci_gap) {
  MetricReport report;
  report.sci_gap = sci_gap.value_or(default_sci_gap(truth.mode));

  PairCounts ci_counts = count_pairs(scores, truth, [&](const auto& i, const auto& j) {
    return truth.goodness(i) > truth.goodness(j);
  });
  if (ci_counts.total == 0)
    throw MetricError("concordance index undefined: ground truth has no strictly "
                      "ordered pairs");
  report.ci_concordant = ci_counts.concordant;
  report.ci_total = ci_counts.total;
  report.ci = static_cast<double>(ci_counts.concordant) /
              static_cast<double>(ci_counts.total);

  report.sci = soft_concordance_index(scores, truth, report.sci_gap);
  PairCounts sci_counts = count_pairs(scores, truth, [&](const auto& i, const auto& j) {
    return truth.goodness(i) > truth.goodness(j) && truth.gap(i, j) >= report.sci_gap;
  });
  report.sci_concordant = sci_counts.concordant;
  report.sci_total = sci_counts.total;
  return report;
}

std::map<JudgmentScale, double> judgment_distribution(
    const std::vector<JudgeRecord>& records) {
  if (records.empty())
    throw MetricError("judgment distribution undefined for empty record set");

  std::map<JudgmentScale, long> counts;
  for (JudgmentScale s : kAllJudgments) counts[s] = 0;
  for (const auto& record : records) ++counts[record.parsed];

  // Largest-remainder apportionment in 0.1% units so the rounded
  // percentages sum to exactly 100.0.
  const double total = static_cast<double>(records.size());
  long assigned = 0;
  std::vector<std::pair<JudgmentScale, double>> remainders;
  std::map<JudgmentScale, long> units;
  for (JudgmentScale s : kAllJudgments) {
    double exact = 1000.0 * static_cast<double>(counts[s]) / total;
    long floor_units = static_cast<long>(std::floor(exact));
    units[s] = floor_units;
    assigned += floor_units;
    remainders.emplace_back(s, exact - static_cast<double>(floor_units));
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  const long leftover = 1000 - assigned;
  for (long i = 0; i < leftover; ++i)
    ++units[remainders[static_cast<std::size_t>(i)].first];

  std::map<JudgmentScale, double> percentages;
  for (JudgmentScale s : kAllJudgments)
    percentages[s] = static_cast<double>(units[s]) / 10.0;
  return percentages;
}

namespace {

unsigned long long choose(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned long long result = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    result = result * (n - r + i) / i;
    if (result > (1ull << 60)) return 1ull << 60;  // saturate; only compared to caps
  }
  return result;
}

std::vector<std::vector<std::size_t>> enumerate_subsets(std::size_t k, std::size_t j) {
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> current(j);
  std::iota(current.begin(), current.end(), std::size_t{0});
  while (true) {
    subsets.push_back(current);
    // Next lexicographic combination.
    std::size_t i = j;
    while (i > 0 && current[i - 1] == k - j + i - 1) --i;
    if (i == 0) break;
    ++current[i - 1];
    for (std::size_t t = i; t < j; ++t) current[t] = current[t - 1] + 1;
  }
  return subsets;
}

std::vector<std::vector<std::size_t>> sample_subsets(std::size_t k, std::size_t j,
                                                     std::size_t count,
                                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> indices(k);
  while (seen.size() < count) {
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    for (std::size_t i = 0; i < j; ++i) {
      std::size_t pick = i + static_cast<std::size_t>(rng() % (k - i));
      std::swap(indices[i], indices[pick]);
    }
    std::vector<std::size_t> subset(indices.begin(), indices.begin() + static_cast<long>(j));
    std::sort(subset.begin(), subset.end());
    seen.insert(std::move(subset));
  }
  return {seen.begin(), seen.end()};
}

double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.size() == 1) return sorted[0];
  double h = p * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(h));
  double frac = h - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

AblationRow criteria_ablation(const ComparisonTensor& tensor, const ResponseSet& dataset,
                              std::size_t subset_size, const AblationConfig& config) {
  std::size_t k = tensor.criteria_count();
  if (subset_size < 1 || subset_size > k)
    throw ValidationError("subset size " + std::to_string(subset_size) +
                          " out of range for " + std::to_string(k) + " criteria");
  if (!dataset.ground_truth)
    throw ValidationError("criteria ablation needs ground truth");
  if (tensor.response_count() != dataset.size())
    throw ValidationError("tensor response count does not match dataset");

  // Per-criterion eigenvector rows are subset-independent; compute once.
  CriterionScoreMatrix full = criterion_scores(tensor);
  WeightVector weights = criteria_weights(subset_size);

  std::vector<std::vector<std::size_t>> subsets =
      choose(k, subset_size) <= config.max_subsets
          ? enumerate_subsets(k, subset_size)
          : sample_subsets(k, subset_size, config.max_subsets, config.seed);

  AblationRow row;
  row.subset_size = subset_size;
  row.subsets = subsets.size();
  row.values.reserve(subsets.size());
  for (const auto& subset : subsets) {
    CriterionScoreMatrix sub;
    sub.criteria = subset_size;
    sub.responses = full.responses;
    sub.cells.reserve(subset_size * full.responses);
    for (std::size_t c : subset) {
      auto r = full.row(c);
      sub.cells.insert(sub.cells.end(), r.begin(), r.end());
    }
    FinalScores finals = aggregate_scores(sub, weights);
    std::map<std::string, double> scores;
    for (std::size_t i = 0; i < dataset.size(); ++i)
      scores[dataset.at(i).id] = finals.scores[i];
    row.values.push_back(concordance_index(scores, *dataset.ground_truth));
  }

  std::vector<double> sorted = row.values;
  std::sort(sorted.begin(), sorted.end());
  row.min = sorted.front();
  row.max = sorted.back();
  row.q1 = quantile(sorted, 0.25);
  row.q3 = quantile(sorted, 0.75);
  row.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
             static_cast<double>(sorted.size());
  return row;
}

}  // namespace ahpeval
