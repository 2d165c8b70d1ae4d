#include "ahpeval/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "ahpeval/error.hpp"
#include "ahpeval/util.hpp"

namespace ahpeval {

using nlohmann::json;

std::string_view to_string(TruthMode mode) {
  return mode == TruthMode::levels ? "levels" : "ranking";
}

TruthMode truth_mode_from_string(std::string_view s) {
  if (s == "levels") return TruthMode::levels;
  if (s == "ranking") return TruthMode::ranking;
  throw ValidationError("unknown ground-truth mode: " + std::string(s) +
                        " (expected \"levels\" or \"ranking\")");
}

double GroundTruth::goodness(const std::string& id) const {
  auto it = values.find(id);
  if (it == values.end())
    throw ValidationError("ground truth has no entry for response id \"" + id + "\"");
  // Rank position 1 is best, so negate for a monotone goodness value.
  return mode == TruthMode::levels ? static_cast<double>(it->second)
                                   : -static_cast<double>(it->second);
}

int GroundTruth::gap(const std::string& better, const std::string& worse) const {
  auto gb = values.at(better);
  auto gw = values.at(worse);
  return mode == TruthMode::levels ? gb - gw : gw - gb;
}

void GroundTruth::validate(const std::vector<std::string>& ids) const {
  for (const auto& [id, value] : values) {
    if (std::find(ids.begin(), ids.end(), id) == ids.end())
      throw ValidationError("ground truth covers unknown response id \"" + id + "\"");
  }
  for (const auto& id : ids) {
    if (!values.count(id))
      throw ValidationError("ground truth missing response id \"" + id + "\"");
  }
  if (mode == TruthMode::ranking) {
    std::vector<int> ranks;
    ranks.reserve(values.size());
    for (const auto& [id, rank] : values) ranks.push_back(rank);
    std::sort(ranks.begin(), ranks.end());
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      if (ranks[i] != static_cast<int>(i) + 1) {
        // Name the offending value: either a duplicate or a hole.
        if (i > 0 && ranks[i] == ranks[i - 1])
          throw ValidationError("ranking is not a permutation: duplicate rank " +
                                std::to_string(ranks[i]));
        throw ValidationError("ranking is not a permutation of 1.." +
                              std::to_string(ranks.size()) + ": missing rank " +
                              std::to_string(i + 1));
      }
    }
  }
}

std::size_t ResponseSet::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < responses.size(); ++i)
    if (responses[i].id == id) return i;
  throw ValidationError("unknown response id \"" + id + "\"");
}

std::vector<std::string> ResponseSet::ids() const {
  std::vector<std::string> out;
  out.reserve(responses.size());
  for (const auto& r : responses) out.push_back(r.id);
  return out;
}

void ResponseSet::validate() const {
  if (responses.size() < 2)
    throw ValidationError("dataset needs at least 2 responses, got " +
                          std::to_string(responses.size()));
  std::set<std::string> seen;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    const Response& r = responses[i];
    if (r.id.empty())
      throw ValidationError("response " + std::to_string(i) + " has an empty id");
    if (trim(r.text).empty())
      throw ValidationError("response \"" + r.id + "\" has empty text");
    if (!seen.insert(r.id).second)
      throw ValidationError("duplicate response id \"" + r.id + "\"");
  }
  if (ground_truth) ground_truth->validate(ids());
}

json dataset_to_json(const ResponseSet& dataset) {
  json doc;
  doc["question"] = dataset.question;
  doc["responses"] = json::array();
  for (const auto& r : dataset.responses)
    doc["responses"].push_back({{"id", r.id}, {"text", r.text}});
  if (dataset.ground_truth) {
    json values = json::object();
    for (const auto& [id, v] : dataset.ground_truth->values) values[id] = v;
    doc["ground_truth"] = {{"mode", std::string(to_string(dataset.ground_truth->mode))},
                           {"values", values}};
  }
  return doc;
}

ResponseSet dataset_from_json(const json& doc, const std::string& source) {
  ResponseSet ds;
  try {
    ds.question = doc.at("question").get<std::string>();
    for (const auto& r : doc.at("responses")) {
      ds.responses.push_back(
          {r.at("id").get<std::string>(), r.at("text").get<std::string>()});
    }
    if (doc.contains("ground_truth") && !doc.at("ground_truth").is_null()) {
      const json& gt = doc.at("ground_truth");
      GroundTruth truth;
      truth.mode = truth_mode_from_string(gt.at("mode").get<std::string>());
      for (const auto& [id, v] : gt.at("values").items())
        truth.values[id] = v.get<int>();
      ds.ground_truth = std::move(truth);
    }
  } catch (const json::exception& e) {
    throw ValidationError(source + ": malformed dataset document: " + e.what());
  }
  try {
    ds.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
  return ds;
}

ResponseSet load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open dataset file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": invalid JSON: " + e.what());
  }
  return dataset_from_json(doc, path.string());
}

void save_dataset(const ResponseSet& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write dataset file " + path.string());
  out << dataset_to_json(dataset).dump(2) << "\n";
}

std::string dataset_digest(const ResponseSet& dataset) {
  return hex_digest(dataset_to_json(dataset).dump());
}

}  // namespace ahpeval
