#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ahpeval/matrix.hpp"

namespace ahpeval {

struct PowerIterationOptions {
  double tolerance = 1e-10;  // L1 distance between successive iterates
  int max_iterations = 10000;
};

struct EigenResult {
  std::vector<double> vector;  // L1-normalized, entrywise positive
  double lambda_max = 0.0;     // Rayleigh quotient at convergence
  int iterations = 0;
  double residual = 0.0;
};

// Power iteration from the uniform positive start vector. Positive
// matrices guarantee convergence to the Perron vector.
EigenResult principal_eigen(const PairwiseMatrix& matrix,
                            const PowerIterationOptions& options = {});

std::vector<double> principal_eigenvector(const PairwiseMatrix& matrix);

// Criteria weights from the rank-order preference matrix: positive,
// sums to 1, strictly decreasing.
struct WeightVector {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  void validate() const;
};

WeightVector criteria_weights(std::size_t k);

// Row k holds the L1-normalized priority scores of all responses under
// criterion k.
struct CriterionScoreMatrix {
  std::size_t criteria = 0;
  std::size_t responses = 0;
  std::vector<double> cells;  // row-major

  double at(std::size_t c, std::size_t i) const noexcept {
    return cells[c * responses + i];
  }
  std::span<const double> row(std::size_t c) const {
    return {cells.data() + c * responses, responses};
  }
  void validate() const;
};

CriterionScoreMatrix criterion_scores(const ComparisonTensor& tensor);

struct FinalScores {
  std::vector<double> scores;         // convex combination of score rows; sums to 1
  std::vector<std::size_t> ranking;   // response indices, best first
  void validate() const;
};

// Descending score; ties broken by ascending index.
std::vector<std::size_t> rank_descending(std::span<const double> scores);

FinalScores aggregate_scores(const CriterionScoreMatrix& scores,
                             std::span<const double> weights);
FinalScores aggregate_scores(const CriterionScoreMatrix& scores,
                             const WeightVector& weights);

// Saaty consistency ratio, 0 for n <= 2; supported up to n = 15.
double consistency_ratio(const PairwiseMatrix& matrix);

}  // namespace ahpeval
