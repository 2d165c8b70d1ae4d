#pragma once

#include <Eigen/Dense>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ahpeval/dataset.hpp"
#include "ahpeval/judge.hpp"
#include "ahpeval/matrix.hpp"
#include "ahpeval/oracle.hpp"

namespace helpers {

inline std::string padded_id(std::size_t i, std::size_t n) {
  std::string digits = std::to_string(n - 1);
  std::string id = std::to_string(i);
  return "r" + std::string(digits.size() - std::min(digits.size(), id.size()), '0') + id;
}

// n responses with stable ids r00..; index order is id order.
inline ahpeval::ResponseSet synthetic_dataset(std::size_t n) {
  ahpeval::ResponseSet ds;
  ds.question = "How can we reduce the number of latecomers for team meetings?";
  for (std::size_t i = 0; i < n; ++i) {
    ds.responses.push_back(
        {padded_id(i, n), "Candidate answer number " + std::to_string(i) +
                              " proposing a distinct scheduling fix."});
  }
  return ds;
}

// Ranking ground truth matching dataset order: response i has rank i+1.
inline void attach_ranking_truth(ahpeval::ResponseSet& ds) {
  ahpeval::GroundTruth truth;
  truth.mode = ahpeval::TruthMode::ranking;
  for (std::size_t i = 0; i < ds.size(); ++i)
    truth.values[ds.at(i).id] = static_cast<int>(i) + 1;
  ds.ground_truth = truth;
}

// Levels ground truth: `levels` groups of equal size, best level first.
inline void attach_levels_truth(ahpeval::ResponseSet& ds, int levels) {
  ahpeval::GroundTruth truth;
  truth.mode = ahpeval::TruthMode::levels;
  std::size_t per = ds.size() / static_cast<std::size_t>(levels);
  for (std::size_t i = 0; i < ds.size(); ++i)
    truth.values[ds.at(i).id] = levels - static_cast<int>(i / per);
  ds.ground_truth = truth;
}

// Strictly ordered hidden quality shared across criteria: response 0
// best, evenly spaced over [0, 1].
inline ahpeval::OracleProfile ordered_profile(const ahpeval::ResponseSet& ds,
                                              double noise = 0.0,
                                              std::uint64_t seed = 0) {
  ahpeval::OracleProfile profile;
  auto n = static_cast<double>(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i)
    profile.quality[ds.at(i).id] = {1.0 - static_cast<double>(i) / (n - 1.0)};
  profile.noise_amplitude = noise;
  profile.seed = seed;
  return profile;
}

// Dense eigen-decomposition oracle (Eigen), independent of the power
// iteration under test: principal eigenvector, L1-normalized positive.
inline std::vector<double> dense_principal_eigenvector(const ahpeval::PairwiseMatrix& m) {
  auto n = static_cast<Eigen::Index>(m.order());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (solver.eigenvalues()(i).real() > solver.eigenvalues()(best).real()) best = i;
  Eigen::VectorXd v = solver.eigenvectors().col(best).real().cwiseAbs();
  v /= v.sum();
  return {v.data(), v.data() + v.size()};
}

inline double dense_lambda_max(const ahpeval::PairwiseMatrix& m) {
  auto n = static_cast<Eigen::Index>(m.order());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
  double best = solver.eigenvalues()(0).real();
  for (Eigen::Index i = 1; i < n; ++i)
    best = std::max(best, solver.eigenvalues()(i).real());
  return best;
}

// Random positive reciprocal matrix with entries in [1/9, 9].
inline ahpeval::PairwiseMatrix random_reciprocal(std::mt19937_64& rng, std::size_t n) {
  ahpeval::PairwiseMatrix m(n);
  std::uniform_real_distribution<double> dist(-std::log(9.0), std::log(9.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set_pair(i, j, std::exp(dist(rng)));
  return m;
}

// Consistent matrix m_ij = v_i / v_j from a random positive weight vector.
inline ahpeval::PairwiseMatrix consistent_matrix(const std::vector<double>& v) {
  ahpeval::PairwiseMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) m.set_pair(i, j, v[i] / v[j]);
  return m;
}

// Independent brute-force enumerators for Eqs. (7)-(8), kept separate
// from the production metric path on purpose.
inline double brute_force_ci(const std::vector<double>& f, const std::vector<double>& g) {
  long total = 0, hits = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (g[i] > g[j]) {
        ++total;
        if (f[i] > f[j]) ++hits;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

inline double brute_force_sci(const std::vector<double>& f, const std::vector<double>& g,
                              double gap) {
  long total = 0, hits = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (g[i] > g[j] && g[i] - g[j] >= gap) {
        ++total;
        if (f[i] > f[j]) ++hits;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

// Backend that fails every compare after a fixed number of calls;
// simulates a killed run for crash-resume tests.
class FlakyBackend : public ahpeval::Backend {
 public:
  FlakyBackend(ahpeval::Backend& inner, std::size_t fail_after)
      : inner_(inner), fail_after_(fail_after) {}

  std::string backend_id() const override { return inner_.backend_id(); }
  std::string model_id() const override { return inner_.model_id(); }
  std::string template_version() const override { return inner_.template_version(); }

  ahpeval::CompletionResult compare_raw(const ahpeval::JudgeRequest& r, bool h) override {
    if (calls_.fetch_add(1) >= fail_after_)
      throw ahpeval::BackendError("injected mid-run failure");
    return inner_.compare_raw(r, h);
  }
  ahpeval::CompletionResult reasons_raw(const ahpeval::ReasonRequest& r, bool h) override {
    return inner_.reasons_raw(r, h);
  }
  ahpeval::CompletionResult summarize_raw(const ahpeval::SummarizeRequest& r,
                                          bool h) override {
    return inner_.summarize_raw(r, h);
  }
  ahpeval::CompletionResult score_raw(const ahpeval::ScoreRequest& r, bool h) override {
    return inner_.score_raw(r, h);
  }
  ahpeval::CompletionResult level_raw(const ahpeval::LevelRequest& r, bool h) override {
    return inner_.level_raw(r, h);
  }
  ahpeval::CompletionResult cefr_raw(const ahpeval::CefrRequest& r, bool h) override {
    return inner_.cefr_raw(r, h);
  }

 private:
  ahpeval::Backend& inner_;
  std::atomic<std::size_t> calls_{0};
  std::size_t fail_after_;
};

}  // namespace helpers
