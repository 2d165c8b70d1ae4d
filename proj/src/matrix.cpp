#include "ahpeval/matrix.hpp"

#include <cmath>
#include <set>
#include <string>

#include "ahpeval/error.hpp"

namespace ahpeval {

namespace {

std::string entry_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

PairwiseMatrix::PairwiseMatrix(std::size_t order)
    : order_(order), cells_(order * order, 1.0) {
  if (order == 0) throw ValidationError("matrix order must be positive");
}

PairwiseMatrix PairwiseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  PairwiseMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw ValidationError("matrix row " + std::to_string(i) + " has length " +
                            std::to_string(rows[i].size()) + ", expected " +
                            std::to_string(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) m.cells_[i * m.order_ + j] = rows[i][j];
  }
  m.validate();
  return m;
}

void PairwiseMatrix::set_pair(std::size_t i, std::size_t j, Ratio value) {
  if (i == j) throw ValidationError("set_pair requires distinct indices");
  cells_[i * order_ + j] = value.value();
  cells_[j * order_ + i] = value.reciprocal().value();
}

void PairwiseMatrix::set_pair(std::size_t i, std::size_t j, double value) {
  if (i == j) throw ValidationError("set_pair requires distinct indices");
  if (!(value > 0.0)) throw ValidationError("matrix entries must be positive");
  cells_[i * order_ + j] = value;
  cells_[j * order_ + i] = 1.0 / value;
}

void PairwiseMatrix::validate() const {
  for (std::size_t i = 0; i < order_; ++i) {
    if (at(i, i) != 1.0)
      throw ValidationError("diagonal entry " + entry_name(i, i) + " is not 1");
    for (std::size_t j = 0; j < order_; ++j) {
      double v = at(i, j);
      if (!(v > 0.0) || !std::isfinite(v))
        throw ValidationError("entry " + entry_name(i, j) + " is not strictly positive");
      if (j > i) {
        double product = v * at(j, i);
        if (std::abs(product - 1.0) > 1e-12)
          throw ValidationError("reciprocity violated at " + entry_name(i, j) +
                                ": product deviates by " +
                                std::to_string(std::abs(product - 1.0)));
      }
    }
  }
}

PairwiseMatrix build_comparison_matrix(std::span<const PairJudgment> judgments,
                                       std::size_t n, ScaleConvention convention) {
  if (n < 2) throw ValidationError("comparison matrix needs at least 2 responses");
  PairwiseMatrix m(n);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const PairJudgment& pj : judgments) {
    std::size_t a = pj.first, b = pj.second;
    JudgmentScale judgment = pj.judgment;
    if (a == b) throw ValidationError("self-pair " + entry_name(a, b) + " is not a judgment");
    if (a >= n || b >= n)
      throw ValidationError("pair " + entry_name(a, b) + " out of range for n=" +
                            std::to_string(n));
    if (a > b) {
      std::swap(a, b);
      judgment = mirror(judgment);
    }
    if (!seen.insert({a, b}).second)
      throw ValidationError("duplicate judgment for pair " + entry_name(a, b));
    m.set_pair(a, b, judgment_to_value(judgment, convention).ratio());
  }
  std::size_t expected = n * (n - 1) / 2;
  if (seen.size() != expected) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!seen.count({i, j}))
          throw ValidationError("incomplete judgments: missing pair " + entry_name(i, j));
  }
  return m;
}

PairwiseMatrix build_preference_matrix(std::size_t k) {
  if (k == 0) throw ValidationError("preference matrix needs at least one criterion");
  PairwiseMatrix m(k);
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = p + 1; q < k; ++q) m.set_pair(p, q, Ratio(3, 1));
  return m;
}

ComparisonTensor ComparisonTensor::from_slices(std::vector<PairwiseMatrix> slices) {
  if (slices.empty()) throw ValidationError("tensor needs at least one criterion slice");
  std::size_t n = slices.front().order();
  if (n < 2) throw ValidationError("tensor needs at least 2 responses");
  for (std::size_t c = 0; c < slices.size(); ++c) {
    if (slices[c].order() != n)
      throw ValidationError("tensor slice " + std::to_string(c) +
                            " has mismatched order");
    try {
      slices[c].validate();
    } catch (const ValidationError& e) {
      throw ValidationError("tensor slice " + std::to_string(c) + ": " + e.what());
    }
  }
  return ComparisonTensor(std::move(slices));
}

}  // namespace ahpeval
