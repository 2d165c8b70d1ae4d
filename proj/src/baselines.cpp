#include "ahpeval/baselines.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "ahpeval/ahp.hpp"
#include "ahpeval/error.hpp"
#include "ahpeval/util.hpp"

namespace ahpeval {

namespace {

// First integer in the text that falls inside [lo, hi]. A leading minus
// sign makes the number negative rather than being skipped, so "-5" can
// never pass as 5.
std::optional<long> first_integer_in_range(const std::string& text, long lo, long hi) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t b = i;
      bool negative = b > 0 && text[b - 1] == '-';
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i - b <= 9) {
        long value = std::stol(text.substr(b, i - b));
        if (negative) value = -value;
        if (value >= lo && value <= hi) return value;
      }
    } else {
      ++i;
    }
  }
  return std::nullopt;
}

}  // namespace

BaselineResult pairwise_baseline(const ResponseSet& dataset, Backend& backend,
                                 JudgmentCache& cache, const PipelineConfig& config) {
  dataset.validate();
  ComparisonSchedule schedule =
      schedule_comparisons(dataset, {std::nullopt}, backend, cache, config);

  const auto pairs = enumerate_pairs(dataset.size());
  std::vector<PairJudgment> judgments;
  judgments.reserve(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p)
    judgments.push_back({pairs[p].first, pairs[p].second, schedule.records[p].parsed});
  PairwiseMatrix matrix =
      build_comparison_matrix(judgments, dataset.size(), config.convention);

  BaselineResult result;
  result.method = "pairwise";
  result.scores = principal_eigenvector(matrix);
  result.records = std::move(schedule.records);
  result.backend_calls = schedule.backend_calls;
  result.cache_hits = schedule.cache_hits;
  return result;
}

BaselineResult scoring_baseline(const ResponseSet& dataset, Backend& backend) {
  dataset.validate();
  BaselineResult result;
  result.method = "scoring";
  result.scores.reserve(dataset.size());
  for (const auto& response : dataset.responses) {
    ScoreRequest request{dataset.question, response.id, response.text};
    std::optional<long> score;
    std::string raw;
    for (int attempt = 0; attempt < 2 && !score; ++attempt) {
      CompletionResult res = backend.score_raw(request, attempt > 0);
      ++result.backend_calls;
      raw = res.text;
      score = first_integer_in_range(res.text, 0, 100);
    }
    if (!score)
      throw ParseError("no score in [0,100] for response \"" + response.id +
                           "\" after re-prompt",
                       raw);
    result.raw_by_id[response.id] = raw;
    result.scores.push_back(static_cast<double>(*score));
  }
  return result;
}

std::vector<Exemplar> build_exemplars(const ResponseSet& dataset, int& min_level,
                                      int& max_level) {
  if (!dataset.ground_truth)
    throw ValidationError(
        "cannot construct few-shot exemplars: dataset has no ground truth");
  const GroundTruth& truth = *dataset.ground_truth;
  std::vector<Exemplar> exemplars;

  if (truth.mode == TruthMode::levels) {
    std::set<int> levels;
    for (const auto& [id, level] : truth.values) levels.insert(level);
    min_level = *levels.begin();
    max_level = *levels.rbegin();
    for (int level : levels) {
      // Two per level, ascending id.
      std::size_t taken = 0;
      for (const auto& response : dataset.responses) {
        if (truth.values.at(response.id) != level) continue;
        exemplars.push_back({response.text, level});
        if (++taken == 2) break;
      }
      if (taken < 2)
        throw ValidationError("cannot construct few-shot exemplars: level " +
                              std::to_string(level) + " has fewer than 2 responses");
    }
    std::stable_sort(exemplars.begin(), exemplars.end(),
                     [](const Exemplar& a, const Exemplar& b) { return a.level < b.level; });
    return exemplars;
  }

  // Ranking mode: two best, two nearest above the top-33% and top-66%
  // boundaries, two worst; presented as levels 4..1.
  min_level = 1;
  max_level = 4;
  auto n = static_cast<int>(dataset.size());
  std::map<int, std::string> id_by_rank;
  for (const auto& [id, rank] : truth.values) id_by_rank[rank] = id;

  int b33 = (n * 33) / 100;
  int b66 = (n * 66) / 100;
  std::vector<std::pair<std::vector<int>, int>> groups = {
      {{1, 2}, 4}, {{b33 - 1, b33}, 3}, {{b66 - 1, b66}, 2}, {{n - 1, n}, 1}};

  std::set<int> used;
  for (const auto& [ranks, level] : groups) {
    for (int rank : ranks) {
      if (rank < 1 || rank > n || !used.insert(rank).second)
        throw ValidationError(
            "cannot construct few-shot exemplars: rank groups overlap for n=" +
            std::to_string(n));
      const std::string& id = id_by_rank.at(rank);
      exemplars.push_back({dataset.at(dataset.index_of(id)).text, level});
    }
  }
  std::stable_sort(exemplars.begin(), exemplars.end(),
                   [](const Exemplar& a, const Exemplar& b) { return a.level < b.level; });
  return exemplars;
}

BaselineResult few_shot_baseline(const ResponseSet& dataset, Backend& backend) {
  dataset.validate();
  int min_level = 1, max_level = 4;
  std::vector<Exemplar> exemplars = build_exemplars(dataset, min_level, max_level);

  BaselineResult result;
  result.method = "few-shot";
  result.scores.reserve(dataset.size());
  for (const auto& response : dataset.responses) {
    LevelRequest request{dataset.question, response.id, response.text, exemplars,
                         min_level, max_level};
    std::optional<long> level;
    std::string raw;
    for (int attempt = 0; attempt < 2 && !level; ++attempt) {
      CompletionResult res = backend.level_raw(request, attempt > 0);
      ++result.backend_calls;
      raw = res.text;
      level = first_integer_in_range(res.text, min_level, max_level);
    }
    if (!level)
      throw ParseError("no level in [" + std::to_string(min_level) + "," +
                           std::to_string(max_level) + "] for response \"" + response.id +
                           "\" after re-prompt",
                       raw);
    result.raw_by_id[response.id] = raw;
    result.scores.push_back(static_cast<double>(*level));
  }
  return result;
}

namespace {

// Earliest boundary-checked occurrence of any bracket name; falls back
// to a bare ordinal.
std::optional<int> parse_cefr_level(const std::string& text,
                                    const std::vector<std::string>& bracket) {
  std::string lower = to_lower(text);
  std::optional<int> best;
  std::size_t best_pos = std::string::npos;
  for (std::size_t i = 0; i < bracket.size(); ++i) {
    std::string name = to_lower(bracket[i]);
    std::size_t pos = 0;
    while ((pos = lower.find(name, pos)) != std::string::npos) {
      bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(lower[pos - 1]));
      std::size_t end = pos + name.size();
      bool right_ok =
          end >= lower.size() || !std::isalnum(static_cast<unsigned char>(lower[end]));
      if (left_ok && right_ok) {
        if (pos < best_pos) {
          best_pos = pos;
          best = static_cast<int>(i) + 1;
        }
        break;
      }
      ++pos;
    }
  }
  if (best) return best;
  if (auto ordinal = first_integer_in_range(text, 1, static_cast<long>(bracket.size())))
    return static_cast<int>(*ordinal);
  return std::nullopt;
}

}  // namespace

BaselineResult cefr_baseline(const ResponseSet& dataset, Backend& backend,
                             const std::vector<std::string>& bracket) {
  dataset.validate();
  if (bracket.empty()) throw ConfigError("cefr baseline needs a non-empty level bracket");
  if (!dataset.ground_truth || dataset.ground_truth->mode != TruthMode::levels)
    throw ValidationError(
        "cefr baseline is only supported for essay-type datasets with levels-mode "
        "ground truth");

  BaselineResult result;
  result.method = "cefr-level";
  result.scores.reserve(dataset.size());
  for (const auto& response : dataset.responses) {
    CefrRequest request{dataset.question, response.id, response.text, bracket};
    std::optional<int> level;
    std::string raw;
    for (int attempt = 0; attempt < 2 && !level; ++attempt) {
      CompletionResult res = backend.cefr_raw(request, attempt > 0);
      ++result.backend_calls;
      raw = res.text;
      level = parse_cefr_level(res.text, bracket);
    }
    if (!level)
      throw ParseError("no CEFR level recognizable for response \"" + response.id +
                           "\" after re-prompt",
                       raw);
    result.raw_by_id[response.id] = raw;
    result.scores.push_back(static_cast<double>(*level));
  }
  return result;
}

}  // namespace ahpeval
