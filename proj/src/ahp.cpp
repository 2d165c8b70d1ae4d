#include "ahpeval/ahp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "ahpeval/error.hpp"

namespace ahpeval {

namespace {

void matvec(const PairwiseMatrix& m, const std::vector<double>& v,
            std::vector<double>& out) {
  std::size_t n = m.order();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += m.at(i, j) * v[j];
    out[i] = acc;
  }
}

double l1_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

}  // namespace

EigenResult principal_eigen(const PairwiseMatrix& matrix,
                            const PowerIterationOptions& options) {
  std::size_t n = matrix.order();
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);

  double residual = 0.0;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    matvec(matrix, v, next);
    double norm = l1_norm(next);
    for (double& x : next) x /= norm;

    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual += std::abs(next[i] - v[i]);
    v.swap(next);

    if (residual < options.tolerance) {
      // Rayleigh quotient at the converged vector.
      matvec(matrix, v, next);
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        num += v[i] * next[i];
        den += v[i] * v[i];
      }
      return EigenResult{std::move(v), num / den, iter, residual};
    }
  }
  throw ConvergenceError("power iteration did not converge after " +
                             std::to_string(options.max_iterations) +
                             " iterations (last residual " + std::to_string(residual) + ")",
                         residual);
}

std::vector<double> principal_eigenvector(const PairwiseMatrix& matrix) {
  return principal_eigen(matrix).vector;
}

void WeightVector::validate() const {
  if (values.empty()) throw ValidationError("weight vector is empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0))
      throw ValidationError("weight " + std::to_string(i) + " is not positive");
    if (i > 0 && !(values[i] < values[i - 1]))
      throw ValidationError("weights are not strictly decreasing at index " +
                            std::to_string(i));
    sum += values[i];
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ValidationError("weights sum to " + std::to_string(sum) + ", expected 1");
}

WeightVector criteria_weights(std::size_t k) {
  WeightVector w{principal_eigenvector(build_preference_matrix(k))};
  w.validate();
  return w;
}

void CriterionScoreMatrix::validate() const {
  if (criteria == 0 || responses == 0 || cells.size() != criteria * responses)
    throw ValidationError("criterion score matrix has inconsistent shape");
  for (std::size_t c = 0; c < criteria; ++c) {
    double sum = 0.0;
    for (std::size_t i = 0; i < responses; ++i) {
      double v = at(c, i);
      if (!(v > 0.0))
        throw ValidationError("criterion " + std::to_string(c) + " score for response " +
                              std::to_string(i) + " is not positive");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ValidationError("criterion " + std::to_string(c) + " scores sum to " +
                            std::to_string(sum) + ", expected 1");
  }
}

CriterionScoreMatrix criterion_scores(const ComparisonTensor& tensor) {
  CriterionScoreMatrix result;
  result.criteria = tensor.criteria_count();
  result.responses = tensor.response_count();
  result.cells.reserve(result.criteria * result.responses);
  for (std::size_t c = 0; c < result.criteria; ++c) {
    std::vector<double> row;
    try {
      row = principal_eigenvector(tensor.slice(c));
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("criterion " + std::to_string(c) + ": " + e.what(),
                             e.residual());
    }
    result.cells.insert(result.cells.end(), row.begin(), row.end());
  }
  return result;
}

std::vector<std::size_t> rank_descending(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  return order;
}

void FinalScores::validate() const {
  if (scores.empty() || ranking.size() != scores.size())
    throw ValidationError("final scores and ranking sizes disagree");
  double sum = std::accumulate(scores.begin(), scores.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9)
    throw ValidationError("final scores sum to " + std::to_string(sum) + ", expected 1");
  std::vector<std::size_t> expected = rank_descending(scores);
  if (expected != ranking) throw ValidationError("ranking inconsistent with scores");
}

FinalScores aggregate_scores(const CriterionScoreMatrix& scores,
                             std::span<const double> weights) {
  if (weights.size() != scores.criteria)
    throw ValidationError("weight count " + std::to_string(weights.size()) +
                          " does not match criteria count " +
                          std::to_string(scores.criteria));
  std::vector<double> s(scores.responses, 0.0);
  for (std::size_t c = 0; c < scores.criteria; ++c)
    for (std::size_t i = 0; i < scores.responses; ++i) s[i] += weights[c] * scores.at(c, i);
  FinalScores result{std::move(s), {}};
  result.ranking = rank_descending(result.scores);
  return result;
}

FinalScores aggregate_scores(const CriterionScoreMatrix& scores,
                             const WeightVector& weights) {
  return aggregate_scores(scores, std::span<const double>(weights.values));
}

double consistency_ratio(const PairwiseMatrix& matrix) {
  // Saaty random indices for orders 1..15.
  static constexpr std::array<double, 15> kRandomIndex = {
      0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41,
      1.45, 1.49, 1.51, 1.48, 1.56, 1.57, 1.59};
  std::size_t n = matrix.order();
  if (n > kRandomIndex.size())
    throw ValidationError("consistency ratio unsupported for order " + std::to_string(n) +
                          " (max 15)");
  if (n <= 2) return 0.0;  // reciprocal matrices of order <= 2 are always consistent
  double lambda = principal_eigen(matrix).lambda_max;
  double ci = (lambda - static_cast<double>(n)) / static_cast<double>(n - 1);
  double cr = ci / kRandomIndex[n - 1];
  return cr < 0.0 ? 0.0 : cr;  // clip tiny negative rounding noise
}

}  // namespace ahpeval
