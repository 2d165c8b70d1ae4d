#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ahpeval/judgment.hpp"

namespace ahpeval {

// Positive reciprocal comparison matrix: unit diagonal, entry(j,i) equal
// to 1/entry(i,j) within 1e-12 relative.
class PairwiseMatrix {
 public:
  // Order-n matrix of all ones (every comparison a tie).
  explicit PairwiseMatrix(std::size_t order);

  // Validates the reciprocal-matrix invariants before returning.
  static PairwiseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t order() const noexcept { return order_; }
  double at(std::size_t i, std::size_t j) const noexcept {
    return cells_[i * order_ + j];
  }

  // Sets entry(i,j) = value and entry(j,i) = 1/value. i != j.
  void set_pair(std::size_t i, std::size_t j, Ratio value);
  void set_pair(std::size_t i, std::size_t j, double value);

  void validate() const;  // throws ValidationError naming the offending entry

 private:
  std::size_t order_;
  std::vector<double> cells_;  // row-major
};

struct PairJudgment {
  std::size_t first = 0;   // lower index of the unordered pair
  std::size_t second = 0;  // higher index
  JudgmentScale judgment = JudgmentScale::tie;  // oriented first-vs-second
};

// Builds the order-n slice from exactly n(n-1)/2 judgments, one per
// unordered pair. Pairs given in reversed index order are canonicalized
// by mirroring the judgment. Missing or duplicated pairs are reported by
// index.
PairwiseMatrix build_comparison_matrix(std::span<const PairJudgment> judgments,
                                       std::size_t n,
                                       ScaleConvention convention = ScaleConvention::reciprocal);

// Rank-order preference matrix over k pre-ranked criteria: 3 above the
// diagonal, 1/3 below. No judge calls are involved.
PairwiseMatrix build_preference_matrix(std::size_t k);

// k reciprocal slices of common order n; k >= 1, n >= 2.
class ComparisonTensor {
 public:
  static ComparisonTensor from_slices(std::vector<PairwiseMatrix> slices);

  std::size_t criteria_count() const noexcept { return slices_.size(); }
  std::size_t response_count() const noexcept { return slices_.front().order(); }
  const PairwiseMatrix& slice(std::size_t c) const { return slices_.at(c); }
  const std::vector<PairwiseMatrix>& slices() const noexcept { return slices_; }

 private:
  explicit ComparisonTensor(std::vector<PairwiseMatrix> slices)
      : slices_(std::move(slices)) {}
  std::vector<PairwiseMatrix> slices_;
};

}  // namespace ahpeval
