#pragma once

#include <atomic>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ahpeval/judgment.hpp"

namespace ahpeval {

struct JudgeRequest {
  std::optional<std::string> criterion;  // absent = criterion-free comparison
  std::string question;
  std::string id_a, id_b;
  std::string answer_a, answer_b;

  void validate() const;
};

struct CompletionResult {
  std::string text;
  int attempts = 1;  // transport attempts consumed by the backend
  long tokens = 0;
};

struct ReasonRequest {
  std::string question;
  std::string first_id, second_id;
  std::string first_text, second_text;
};

struct SummarizeRequest {
  std::string question;
  std::vector<std::string> reasons;
  std::size_t k = 0;
};

struct ScoreRequest {
  std::string question;
  std::string id;
  std::string answer;
};

struct Exemplar {
  std::string text;
  int level = 0;
};

struct LevelRequest {
  std::string question;
  std::string id;
  std::string answer;
  std::vector<Exemplar> exemplars;
  int min_level = 1, max_level = 4;
};

struct CefrRequest {
  std::string question;
  std::string id;
  std::string answer;
  std::vector<std::string> bracket;  // level names, worst to best
};

// One backend answers every request kind the experiments make. Each
// method returns raw text; parsing belongs to the calling module, so the
// same parsers run against LLM, fixture, and oracle output alike.
// `strict_hint` asks for a tighter output format on parse-failure
// re-prompts; backends with inherently parseable output ignore it.
// Implementations must tolerate concurrent calls.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual std::string backend_id() const = 0;
  virtual std::string model_id() const = 0;
  virtual std::string template_version() const;

  virtual CompletionResult compare_raw(const JudgeRequest& request, bool strict_hint) = 0;
  virtual CompletionResult reasons_raw(const ReasonRequest& request, bool strict_hint) = 0;
  virtual CompletionResult summarize_raw(const SummarizeRequest& request,
                                         bool strict_hint) = 0;
  virtual CompletionResult score_raw(const ScoreRequest& request, bool strict_hint) = 0;
  virtual CompletionResult level_raw(const LevelRequest& request, bool strict_hint) = 0;
  virtual CompletionResult cefr_raw(const CefrRequest& request, bool strict_hint) = 0;
};

// Audit record of one comparison; `parsed` always re-derives from `raw`.
struct JudgeRecord {
  std::string key;  // cache key, see judgment_cache_key
  std::string backend_id;
  std::string model_id;
  std::string template_version;
  std::optional<std::string> criterion;
  std::string id_a, id_b;
  std::string raw;
  JudgmentScale parsed = JudgmentScale::tie;
  std::string timestamp;
  int attempts = 1;
  long tokens = 0;
};

// Digest over (backend, model, template version, criterion, question
// digest, ordered pair). Stable across runs.
std::string judgment_cache_key(const Backend& backend, const JudgeRequest& request);
std::string judgment_cache_key(const std::string& backend_id, const std::string& model_id,
                               const std::string& template_version,
                               const std::optional<std::string>& criterion,
                               const std::string& question, const std::string& id_a,
                               const std::string& id_b);

// Runs one comparison: calls the backend, parses the five-option reply,
// and re-prompts up to 2 times with a strict-format hint before
// surfacing a parse failure.
JudgeRecord compare(Backend& backend, const JudgeRequest& request);

// Label first (a single letter A-E bound to the five options), phrase
// matching second; case-insensitive.
JudgmentScale parse_judgment(const std::string& raw);
std::optional<JudgmentScale> try_parse_judgment(const std::string& raw);

// Decorator counting every backend call; wraps the acceptance suite's
// dry-run counting mode and the request-count contract tests.
class CountingBackend : public Backend {
 public:
  explicit CountingBackend(Backend& inner) : inner_(inner) {}

  std::string backend_id() const override { return inner_.backend_id(); }
  std::string model_id() const override { return inner_.model_id(); }
  std::string template_version() const override { return inner_.template_version(); }

  CompletionResult compare_raw(const JudgeRequest& r, bool h) override {
    ++compare_calls_;
    return inner_.compare_raw(r, h);
  }
  CompletionResult reasons_raw(const ReasonRequest& r, bool h) override {
    ++reason_calls_;
    return inner_.reasons_raw(r, h);
  }
  CompletionResult summarize_raw(const SummarizeRequest& r, bool h) override {
    ++summarize_calls_;
    return inner_.summarize_raw(r, h);
  }
  CompletionResult score_raw(const ScoreRequest& r, bool h) override {
    ++score_calls_;
    return inner_.score_raw(r, h);
  }
  CompletionResult level_raw(const LevelRequest& r, bool h) override {
    ++level_calls_;
    return inner_.level_raw(r, h);
  }
  CompletionResult cefr_raw(const CefrRequest& r, bool h) override {
    ++cefr_calls_;
    return inner_.cefr_raw(r, h);
  }

  std::size_t compare_calls() const { return compare_calls_; }
  std::size_t total_calls() const {
    return compare_calls_ + reason_calls_ + summarize_calls_ + score_calls_ +
           level_calls_ + cefr_calls_;
  }
  void reset() {
    compare_calls_ = reason_calls_ = summarize_calls_ = 0;
    score_calls_ = level_calls_ = cefr_calls_ = 0;
  }

 private:
  Backend& inner_;
  std::atomic<std::size_t> compare_calls_{0}, reason_calls_{0}, summarize_calls_{0},
      score_calls_{0}, level_calls_{0}, cefr_calls_{0};
};

}  // namespace ahpeval
