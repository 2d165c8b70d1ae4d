#include "ahpeval/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "ahpeval/error.hpp"
#include "ahpeval/util.hpp"

namespace ahpeval {

using nlohmann::json;

namespace {

const std::vector<std::string> kDefaultReasons = {
    "Clarity and coherence of the argument",
    "Practical feasibility of the suggestion",
    "Depth of analysis and supporting detail",
    "Relevance to the question asked",
    "Use of concrete examples",
    "Originality of the idea",
};

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

void OracleProfile::validate() const {
  if (quality.empty()) throw ConfigError("oracle profile has no quality entries");
  if (!(delta_big > delta_small) || delta_small < 0.0)
    throw ConfigError("oracle profile requires delta_big > delta_small >= 0");
  if (noise_amplitude < 0.0)
    throw ConfigError("oracle profile noise amplitude must be nonnegative");
  std::size_t dims = quality.begin()->second.size();
  if (dims == 0) throw ConfigError("oracle profile quality vectors must be non-empty");
  for (const auto& [id, q] : quality) {
    if (q.size() != dims)
      throw ConfigError("oracle profile quality for \"" + id +
                        "\" has inconsistent length");
  }
  if (dims > 1 && criteria_labels.size() != dims)
    throw ConfigError("oracle profile with " + std::to_string(dims) +
                      "-dimensional quality needs matching criteria_labels");
}

json OracleProfile::to_json() const {
  json q = json::object();
  for (const auto& [id, v] : quality) q[id] = v;
  json doc = {{"quality", q},
              {"delta_small", delta_small},
              {"delta_big", delta_big},
              {"noise_amplitude", noise_amplitude},
              {"seed", seed}};
  if (!criteria_labels.empty()) doc["criteria_labels"] = criteria_labels;
  if (!reason_fixtures.empty()) doc["reason_fixtures"] = reason_fixtures;
  if (!criteria_fixtures.empty()) doc["criteria_fixtures"] = criteria_fixtures;
  return doc;
}

OracleProfile OracleProfile::from_json(const json& doc) {
  OracleProfile p;
  try {
    for (const auto& [id, v] : doc.at("quality").items()) {
      if (v.is_number()) {
        p.quality[id] = {v.get<double>()};
      } else {
        p.quality[id] = v.get<std::vector<double>>();
      }
    }
    p.delta_small = doc.value("delta_small", p.delta_small);
    p.delta_big = doc.value("delta_big", p.delta_big);
    p.noise_amplitude = doc.value("noise_amplitude", p.noise_amplitude);
    p.seed = doc.value("seed", p.seed);
    if (doc.contains("criteria_labels"))
      p.criteria_labels = doc.at("criteria_labels").get<std::vector<std::string>>();
    if (doc.contains("reason_fixtures"))
      p.reason_fixtures = doc.at("reason_fixtures").get<std::vector<std::string>>();
    if (doc.contains("criteria_fixtures"))
      p.criteria_fixtures = doc.at("criteria_fixtures").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed oracle profile: ") + e.what());
  }
  p.validate();
  return p;
}

OracleProfile OracleProfile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open oracle profile " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  return from_json(doc);
}

OracleBackend::OracleBackend(OracleProfile profile) : profile_(std::move(profile)) {
  profile_.validate();
}

double OracleBackend::quality_of(const std::string& id,
                                 const std::optional<std::string>& criterion) const {
  auto it = profile_.quality.find(id);
  if (it == profile_.quality.end())
    throw ConfigError("oracle profile has no quality for response id \"" + id + "\"");
  const std::vector<double>& q = it->second;
  if (!criterion)
    return std::accumulate(q.begin(), q.end(), 0.0) / static_cast<double>(q.size());
  if (q.size() == 1) return q[0];
  auto pos = std::find(profile_.criteria_labels.begin(), profile_.criteria_labels.end(),
                       *criterion);
  if (pos == profile_.criteria_labels.end())
    throw ConfigError("oracle profile has no quality dimension for criterion \"" +
                      *criterion + "\"");
  return q[static_cast<std::size_t>(pos - profile_.criteria_labels.begin())];
}

CompletionResult OracleBackend::compare_raw(const JudgeRequest& request, bool) {
  double d = quality_of(request.id_a, request.criterion) -
             quality_of(request.id_b, request.criterion);
  if (profile_.noise_amplitude > 0.0) {
    // Hash-derived noise: reproducible across runs and call orderings.
    std::uint64_t h = fnv1a64(join_fields({std::to_string(profile_.seed),
                                           request.criterion.value_or(""), request.id_a,
                                           request.id_b}));
    d += profile_.noise_amplitude * (2.0 * hash_unit_interval(h) - 1.0);
  }
  const char* letter = "C";
  if (d > profile_.delta_big) {
    letter = "A";
  } else if (d > profile_.delta_small) {
    letter = "B";
  } else if (d >= -profile_.delta_small) {
    letter = "C";
  } else if (d >= -profile_.delta_big) {
    letter = "D";
  } else {
    letter = "E";
  }
  return {letter, 1, 0};
}

CompletionResult OracleBackend::reasons_raw(const ReasonRequest& request, bool) {
  const auto& pool =
      profile_.reason_fixtures.empty() ? kDefaultReasons : profile_.reason_fixtures;
  std::uint64_t h = fnv1a64(join_fields(
      {std::to_string(profile_.seed), request.first_id, request.second_id}));
  std::size_t count = 2 + ((h >> 8) % 2);  // 2 or 3 reasons
  std::string text;
  for (std::size_t i = 0; i < count; ++i) {
    text += std::to_string(i + 1) + ". " + pool[(h + i) % pool.size()] + "\n";
  }
  return {text, 1, 0};
}

CompletionResult OracleBackend::summarize_raw(const SummarizeRequest& request, bool) {
  std::vector<std::string> labels;
  if (!profile_.criteria_fixtures.empty()) {
    labels = profile_.criteria_fixtures;
  } else {
    // Rank distinct reasons by frequency, then first appearance.
    std::vector<std::pair<std::string, std::size_t>> counted;  // label, count
    std::map<std::string, std::size_t> index_by_fold;
    for (const auto& r : request.reasons) {
      std::string fold = case_fold(r);
      auto [it, inserted] = index_by_fold.emplace(fold, counted.size());
      if (inserted) {
        counted.emplace_back(trim(r), 1);
      } else {
        ++counted[it->second].second;
      }
    }
    std::vector<std::size_t> order(counted.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return counted[a].second > counted[b].second;
    });
    for (std::size_t i : order) labels.push_back(counted[i].first);
  }
  std::string text;
  std::size_t count = std::min(request.k, labels.size());
  for (std::size_t i = 0; i < count; ++i)
    text += std::to_string(i + 1) + ". " + labels[i] + "\n";
  return {text, 1, 0};
}

CompletionResult OracleBackend::score_raw(const ScoreRequest& request, bool) {
  double overall = clamp01(quality_of(request.id, std::nullopt));
  return {std::to_string(static_cast<int>(std::llround(overall * 100.0))), 1, 0};
}

CompletionResult OracleBackend::level_raw(const LevelRequest& request, bool) {
  double overall = clamp01(quality_of(request.id, std::nullopt));
  int span = request.max_level - request.min_level + 1;
  int level = request.min_level +
              std::min(span - 1, static_cast<int>(overall * static_cast<double>(span)));
  return {"Level " + std::to_string(level), 1, 0};
}

CompletionResult OracleBackend::cefr_raw(const CefrRequest& request, bool) {
  if (request.bracket.empty()) throw ConfigError("cefr request has an empty bracket");
  double overall = clamp01(quality_of(request.id, std::nullopt));
  auto span = static_cast<double>(request.bracket.size());
  auto idx = std::min(request.bracket.size() - 1,
                      static_cast<std::size_t>(overall * span));
  return {request.bracket[idx], 1, 0};
}

}  // namespace ahpeval
