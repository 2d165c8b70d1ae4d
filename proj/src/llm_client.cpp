#ifdef AHPEVAL_WITH_TLS
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif

#include "ahpeval/llm_client.hpp"

#include <chrono>
#include <cstdlib>
#include <random>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "ahpeval/error.hpp"
#include "ahpeval/prompts.hpp"

namespace ahpeval {

using nlohmann::json;

void LlmConfig::validate() const {
  if (base_url.empty()) throw ConfigError("llm backend requires an endpoint URL");
  if (model.empty()) throw ConfigError("llm backend requires a model id");
  if (max_retries < 0 || timeout_seconds <= 0)
    throw ConfigError("llm backend retry/timeout settings out of range");
}

namespace {

std::string resolve_api_key(const LlmConfig& config) {
  const char* key = std::getenv(config.api_key_env.c_str());
  if (key == nullptr || *key == '\0')
    throw CredentialError("environment variable " + config.api_key_env +
                          " is not set; it must hold the judge API key");
  return key;
}

bool retryable_status(int status) {
  return status == 408 || status == 409 || status == 429 || status >= 500;
}

std::chrono::milliseconds backoff_delay(const LlmConfig& config, int attempt) {
  double delay = static_cast<double>(config.backoff_base_ms);
  for (int i = 0; i < attempt; ++i) delay *= config.backoff_factor;
  if (config.jitter) {
    thread_local std::mt19937 rng{std::random_device{}()};
    std::uniform_real_distribution<double> dist(0.0, config.backoff_base_ms / 2.0);
    delay += dist(rng);
  }
  return std::chrono::milliseconds(static_cast<long>(delay));
}

}  // namespace

CompletionResult llm_complete(const std::string& prompt, const LlmConfig& config) {
  config.validate();
  std::string api_key = resolve_api_key(config);

  json body = {
      {"model", config.model},
      {"temperature", config.temperature},
      {"max_tokens", config.max_tokens},
      {"messages",
       json::array({{{"role", "system"}, {"content", std::string(prompts::kSystem)}},
                    {{"role", "user"}, {"content", prompt}}})},
  };
  const std::string payload = body.dump();
  const httplib::Headers headers = {{"Authorization", "Bearer " + api_key}};

  std::string last_error;
  int attempts = 0;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(backoff_delay(config, attempt - 1));
    ++attempts;

    // A client per request keeps concurrent compare calls independent.
    httplib::Client client(config.base_url);
    client.set_connection_timeout(config.timeout_seconds, 0);
    client.set_read_timeout(config.timeout_seconds, 0);
    client.set_write_timeout(config.timeout_seconds, 0);

    auto res = client.Post(config.completion_path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 401 || res->status == 403)
      throw CredentialError("judge endpoint rejected the API key (HTTP " +
                            std::to_string(res->status) + ")");
    if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      if (retryable_status(res->status)) continue;
      throw BackendError("judge endpoint returned " + last_error + ": " + res->body);
    }
    try {
      json reply = json::parse(res->body);
      CompletionResult result;
      result.text = reply.at("choices").at(0).at("message").at("content").get<std::string>();
      result.attempts = attempts;
      if (reply.contains("usage"))
        result.tokens = reply["usage"].value("total_tokens", 0L);
      return result;
    } catch (const json::exception& e) {
      last_error = std::string("malformed completion body: ") + e.what();
      continue;
    }
  }
  throw BackendError("judge endpoint unavailable after " + std::to_string(attempts) +
                     " attempts (" + last_error + ")");
}

LlmBackend::LlmBackend(LlmConfig config) : config_(std::move(config)) {
  config_.validate();
}

CompletionResult LlmBackend::compare_raw(const JudgeRequest& request, bool strict_hint) {
  return llm_complete(prompts::compare_prompt(request, strict_hint), config_);
}

CompletionResult LlmBackend::reasons_raw(const ReasonRequest& request, bool strict_hint) {
  return llm_complete(prompts::reasons_prompt(request, strict_hint), config_);
}

CompletionResult LlmBackend::summarize_raw(const SummarizeRequest& request,
                                           bool strict_hint) {
  return llm_complete(prompts::summarize_prompt(request, strict_hint), config_);
}

CompletionResult LlmBackend::score_raw(const ScoreRequest& request, bool strict_hint) {
  return llm_complete(prompts::scoring_prompt(request, strict_hint), config_);
}

CompletionResult LlmBackend::level_raw(const LevelRequest& request, bool strict_hint) {
  return llm_complete(prompts::few_shot_prompt(request, strict_hint), config_);
}

CompletionResult LlmBackend::cefr_raw(const CefrRequest& request, bool strict_hint) {
  return llm_complete(prompts::cefr_prompt(request, strict_hint), config_);
}

}  // namespace ahpeval
