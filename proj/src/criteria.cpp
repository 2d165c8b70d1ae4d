#include "ahpeval/criteria.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <set>

#include "ahpeval/error.hpp"
#include "ahpeval/prompts.hpp"
#include "ahpeval/util.hpp"

namespace ahpeval {

using nlohmann::json;

void CriterionSet::validate() const {
  if (labels.empty()) throw ValidationError("criterion set is empty");
  std::set<std::string> seen;
  for (const auto& label : labels) {
    if (trim(label).empty()) throw ValidationError("criterion set contains an empty label");
    if (!seen.insert(case_fold(label)).second)
      throw ValidationError("criterion set has duplicate label \"" + trim(label) + "\"");
  }
}

json criteria_to_json(const CriterionSet& set) {
  return json{{"criteria", set.labels},
              {"provenance", set.provenance == CriteriaProvenance::generated
                                 ? "generated"
                                 : "user_supplied"},
              {"m", set.m},
              {"seed", set.seed},
              {"backend", set.backend_id},
              {"model", set.model_id}};
}

CriterionSet criteria_from_json(const json& doc, const std::string& source) {
  CriterionSet set;
  try {
    set.labels = doc.at("criteria").get<std::vector<std::string>>();
    std::string provenance = doc.value("provenance", "user_supplied");
    set.provenance = provenance == "generated" ? CriteriaProvenance::generated
                                               : CriteriaProvenance::user_supplied;
    set.m = doc.value("m", 0u);
    set.seed = doc.value("seed", std::uint64_t{0});
    set.backend_id = doc.value("backend", "");
    set.model_id = doc.value("model", "");
  } catch (const json::exception& e) {
    throw ValidationError(source + ": malformed criteria document: " + e.what());
  }
  try {
    set.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
  return set;
}

CriterionSet load_criteria(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open criteria file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": invalid JSON: " + e.what());
  }
  return criteria_from_json(doc, path.string());
}

void save_criteria(const CriterionSet& set, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write criteria file " + path.string());
  out << criteria_to_json(set).dump(2) << "\n";
}

std::string criteria_digest(const CriterionSet& set) {
  std::vector<std::string_view> fields(set.labels.begin(), set.labels.end());
  return hex_digest(join_fields(fields));
}

std::vector<std::size_t> sample_seed_responses(const ResponseSet& dataset, std::size_t m,
                                               std::uint64_t seed) {
  std::size_t n = dataset.size();
  if (m > n)
    throw ValidationError("sample size " + std::to_string(m) + " exceeds dataset size " +
                          std::to_string(n));
  if (m < 2) throw ValidationError("criteria generation needs a sample of at least 2");

  // Partial Fisher-Yates; deterministic for a given seed on every
  // platform, unlike std::sample.
  std::vector<std::size_t> indices(n);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(m);
  std::sort(indices.begin(), indices.end());
  return indices;
}

std::vector<std::pair<std::size_t, std::size_t>> ordered_pairs(
    const std::vector<std::size_t>& sample) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(sample.size() * (sample.size() - 1));
  for (std::size_t a : sample)
    for (std::size_t b : sample)
      if (a != b) pairs.emplace_back(a, b);
  return pairs;
}

namespace {

// Strips list markers: "1.", "2)", "-", "*", "•".
std::string strip_list_marker(const std::string& line) {
  std::string s = trim(line);
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i > 0 && i < s.size() && (s[i] == '.' || s[i] == ')' || s[i] == ':')) {
    return trim(s.substr(i + 1));
  }
  if (!s.empty() && (s[0] == '-' || s[0] == '*')) return trim(s.substr(1));
  if (s.size() >= 3 && s.compare(0, 3, "\xe2\x80\xa2") == 0) return trim(s.substr(3));
  return s;
}

std::vector<std::string> parse_list_items(const std::string& text,
                                          std::size_t min_words) {
  std::vector<std::string> items;
  for (const auto& line : split_lines(text)) {
    std::string item = strip_list_marker(line);
    if (item.empty()) continue;
    if (word_count(item) < min_words) continue;
    items.push_back(item);
  }
  return items;
}

}  // namespace

ReasonBatch elicit_reasons(Backend& backend, const std::string& question,
                           const Response& first, const Response& second) {
  ReasonRequest request{question, first.id, second.id, first.text, second.text};
  constexpr int kAttempts = 3;
  std::string last_raw;
  for (int i = 0; i < kAttempts; ++i) {
    CompletionResult res = backend.reasons_raw(request, i > 0);
    last_raw = res.text;
    std::vector<std::string> reasons = parse_list_items(res.text, 3);
    if (!reasons.empty()) {
      if (reasons.size() > 5) reasons.resize(5);
      return ReasonBatch{first.id, second.id, std::move(reasons), res.text};
    }
  }
  throw ParseError("no usable reasons for pair (" + first.id + "," + second.id +
                       ") after " + std::to_string(kAttempts) + " attempts",
                   last_raw);
}

namespace {

std::vector<std::string> summarize_once(Backend& backend, const std::string& question,
                                        const std::vector<std::string>& reasons,
                                        std::size_t k) {
  SummarizeRequest request{question, reasons, k};
  constexpr int kAttempts = 3;
  std::size_t best_count = 0;
  std::vector<std::string> best;
  for (int i = 0; i < kAttempts; ++i) {
    CompletionResult res = backend.summarize_raw(request, i > 0);
    // Criteria labels may be short ("Clarity"), so no word-count guard.
    std::vector<std::string> items = parse_list_items(res.text, 1);
    std::vector<std::string> distinct;
    std::set<std::string> seen;
    for (const auto& item : items)
      if (seen.insert(case_fold(item)).second) distinct.push_back(item);
    if (distinct.size() >= k) {
      distinct.resize(k);
      return distinct;
    }
    if (distinct.size() > best_count) {
      best_count = distinct.size();
      best = std::move(distinct);
    }
  }
  throw Error(ErrorKind::parse,
              "backend produced only " + std::to_string(best_count) +
                  " distinct criteria, needed " + std::to_string(k));
}

std::size_t rendered_size(const std::string& question,
                          const std::vector<std::string>& reasons, std::size_t k) {
  return prompts::summarize_prompt({question, reasons, k}, false).size();
}

}  // namespace

CriterionSet summarize_criteria(Backend& backend, const std::string& question,
                                const std::vector<std::string>& reasons, std::size_t k,
                                std::size_t context_budget_chars) {
  if (reasons.empty()) throw ValidationError("reason pool is empty");
  if (k < 1) throw ValidationError("criteria count must be at least 1");

  std::vector<std::string> labels;
  if (rendered_size(question, reasons, k) <= context_budget_chars) {
    labels = summarize_once(backend, question, reasons, k);
  } else {
    // Overflow path: chunked summarize, then merge-summarize.
    constexpr std::size_t kChunk = 100;
    std::vector<std::string> merged;
    for (std::size_t start = 0; start < reasons.size(); start += kChunk) {
      std::size_t end = std::min(start + kChunk, reasons.size());
      std::vector<std::string> chunk(reasons.begin() + start, reasons.begin() + end);
      auto part = summarize_once(backend, question, chunk, k);
      merged.insert(merged.end(), part.begin(), part.end());
    }
    labels = summarize_once(backend, question, merged, k);
  }

  CriterionSet set;
  set.labels = std::move(labels);
  set.provenance = CriteriaProvenance::generated;
  set.backend_id = backend.backend_id();
  set.model_id = backend.model_id();
  set.validate();
  return set;
}

CriterionSet generate_criteria(const ResponseSet& dataset, Backend& backend,
                               const CriteriaGenOptions& options) {
  dataset.validate();
  std::vector<std::size_t> sample = sample_seed_responses(dataset, options.m, options.seed);
  std::vector<std::string> pool;
  for (const auto& [a, b] : ordered_pairs(sample)) {
    ReasonBatch batch =
        elicit_reasons(backend, dataset.question, dataset.at(a), dataset.at(b));
    pool.insert(pool.end(), batch.reasons.begin(), batch.reasons.end());
  }
  CriterionSet set = summarize_criteria(backend, dataset.question, pool, options.k,
                                        options.context_budget_chars);
  set.m = options.m;
  set.seed = options.seed;
  return set;
}

}  // namespace ahpeval
