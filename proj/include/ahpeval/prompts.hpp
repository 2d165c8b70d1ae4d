#pragma once

#include <string>
#include <string_view>

#include "ahpeval/judge.hpp"

namespace ahpeval::prompts {

// Bumped whenever any template text changes; participates in cache keys.
inline constexpr std::string_view kVersion = "pv1";

inline constexpr std::string_view kSystem =
    "You are a careful evaluator of answers to open-ended questions.";

// Five labeled options (A-E); the judgment parser binds these labels.
std::string compare_prompt(const JudgeRequest& request, bool strict_hint);

std::string reasons_prompt(const ReasonRequest& request, bool strict_hint);
std::string summarize_prompt(const SummarizeRequest& request, bool strict_hint);
std::string scoring_prompt(const ScoreRequest& request, bool strict_hint);
std::string few_shot_prompt(const LevelRequest& request, bool strict_hint);
std::string cefr_prompt(const CefrRequest& request, bool strict_hint);

}  // namespace ahpeval::prompts
