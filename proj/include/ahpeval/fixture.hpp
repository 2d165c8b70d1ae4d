#pragma once

#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "ahpeval/judge.hpp"

namespace ahpeval {

// Replays canned replies in FIFO order per request kind. Used for
// offline runs (a directory holding replies.jsonl) and as a scripted
// test double. Exhausting a queue is a config error, never a silent
// fallback.
class FixtureBackend : public Backend {
 public:
  FixtureBackend() = default;

  // Reads <dir>/replies.jsonl: one {"kind": ..., "text": ...} per line,
  // kind in {compare, reasons, summarize, score, level, cefr}.
  static std::unique_ptr<FixtureBackend> from_directory(const std::filesystem::path& dir);

  void push(const std::string& kind, std::string text);

  std::string backend_id() const override { return "fixture"; }
  std::string model_id() const override { return "fixture"; }

  CompletionResult compare_raw(const JudgeRequest&, bool) override { return pop("compare"); }
  CompletionResult reasons_raw(const ReasonRequest&, bool) override { return pop("reasons"); }
  CompletionResult summarize_raw(const SummarizeRequest&, bool) override {
    return pop("summarize");
  }
  CompletionResult score_raw(const ScoreRequest&, bool) override { return pop("score"); }
  CompletionResult level_raw(const LevelRequest&, bool) override { return pop("level"); }
  CompletionResult cefr_raw(const CefrRequest&, bool) override { return pop("cefr"); }

 private:
  CompletionResult pop(const std::string& kind);

  std::mutex mu_;
  std::map<std::string, std::deque<std::string>> queues_;
};

}  // namespace ahpeval
