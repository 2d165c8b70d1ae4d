#pragma once

#include <string>

#include "ahpeval/judge.hpp"

namespace ahpeval {

struct LlmConfig {
  std::string base_url;  // scheme://host[:port]
  std::string completion_path = "/v1/chat/completions";
  std::string model;
  std::string api_key_env = "AHP_JUDGE_API_KEY";
  double temperature = 0.0;  // deterministic decoding by default
  int max_tokens = 768;
  int timeout_seconds = 60;
  int max_retries = 3;  // transport retries beyond the first attempt
  int backoff_base_ms = 500;
  double backoff_factor = 2.0;
  bool jitter = true;

  void validate() const;
};

// One chat completion. Retries transport failures, timeouts, rate
// limits, and 5xx with exponential backoff before surfacing
// BackendError; authentication failures surface immediately as
// CredentialError. `attempts` in the result counts HTTP requests made.
CompletionResult llm_complete(const std::string& prompt, const LlmConfig& config);

class LlmBackend : public Backend {
 public:
  explicit LlmBackend(LlmConfig config);

  std::string backend_id() const override { return "llm"; }
  std::string model_id() const override { return config_.model; }

  CompletionResult compare_raw(const JudgeRequest& request, bool strict_hint) override;
  CompletionResult reasons_raw(const ReasonRequest& request, bool strict_hint) override;
  CompletionResult summarize_raw(const SummarizeRequest& request,
                                 bool strict_hint) override;
  CompletionResult score_raw(const ScoreRequest& request, bool strict_hint) override;
  CompletionResult level_raw(const LevelRequest& request, bool strict_hint) override;
  CompletionResult cefr_raw(const CefrRequest& request, bool strict_hint) override;

  const LlmConfig& config() const noexcept { return config_; }

 private:
  LlmConfig config_;
};

}  // namespace ahpeval
