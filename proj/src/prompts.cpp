#include "ahpeval/prompts.hpp"

namespace ahpeval::prompts {

namespace {

constexpr std::string_view kOptions =
    "(A) Answer 1 is better than Answer 2\n"
    "(B) Answer 1 is slightly better than Answer 2\n"
    "(C) The two answers are almost the same\n"
    "(D) Answer 2 is slightly better than Answer 1\n"
    "(E) Answer 2 is better than Answer 1\n";

constexpr std::string_view kLetterHint = "Answer with exactly one letter A-E.";

}  // namespace

std::string compare_prompt(const JudgeRequest& request, bool strict_hint) {
  std::string p = "Question:\n" + request.question + "\n\n";
  if (request.criterion) {
    p += "Compare the two answers below with respect to this criterion only: " +
         *request.criterion + "\n\n";
  } else {
    p += "Compare the two answers below and decide which one is better overall.\n\n";
  }
  p += "Answer 1:\n" + request.answer_a + "\n\n";
  p += "Answer 2:\n" + request.answer_b + "\n\n";
  p += "Select exactly one option:\n";
  p += kOptions;
  p += "\nReply with the single letter of your choice.";
  if (strict_hint) {
    p += "\n";
    p += kLetterHint;
  }
  return p;
}

std::string reasons_prompt(const ReasonRequest& request, bool strict_hint) {
  std::string p = "Question:\n" + request.question + "\n\n";
  p += "First answer:\n" + request.first_text + "\n\n";
  p += "Second answer:\n" + request.second_text + "\n\n";
  p +=
      "Explain why the first answer is better than the second answer. "
      "Summarize 2 or 3 reasons as a numbered list, one short reason per line.";
  if (strict_hint)
    p += "\nOutput only a numbered list of 2 or 3 reasons, nothing else.";
  return p;
}

std::string summarize_prompt(const SummarizeRequest& request, bool strict_hint) {
  std::string p = "Question:\n" + request.question + "\n\n";
  p += "Below are reasons that were given for preferring one answer over another:\n";
  std::size_t idx = 1;
  for (const auto& r : request.reasons) {
    p += std::to_string(idx++) + ". " + r + "\n";
  }
  p += "\nMany of these reasons are repetitive. Rank and output the top " +
       std::to_string(request.k) +
       " reasons according to their importance and frequency of occurrence, as a "
       "numbered list of short evaluation criteria, most important first. Each "
       "criterion must be distinct.";
  if (strict_hint)
    p += "\nOutput only the numbered list of " + std::to_string(request.k) +
         " distinct criteria, nothing else.";
  return p;
}

std::string scoring_prompt(const ScoreRequest& request, bool strict_hint) {
  std::string p = "Question:\n" + request.question + "\n\n";
  p += "Answer:\n" + request.answer + "\n\n";
  p += "Score this answer on a scale from 0 to 100, where 100 is the best possible "
       "answer. Reply with the integer score only.";
  if (strict_hint) p += "\nReply with a single integer between 0 and 100.";
  return p;
}

std::string few_shot_prompt(const LevelRequest& request, bool strict_hint) {
  std::string p = "Question:\n" + request.question + "\n\n";
  p += "Here are example answers with their quality levels (level " +
       std::to_string(request.min_level) + " is worst, level " +
       std::to_string(request.max_level) + " is best):\n\n";
  for (const auto& ex : request.exemplars) {
    p += "Level " + std::to_string(ex.level) + " example:\n" + ex.text + "\n\n";
  }
  p += "Now assign a level to this answer based on the examples above:\n" +
       request.answer + "\n\n";
  p += "Reply with the integer level only.";
  if (strict_hint)
    p += "\nReply with a single integer between " + std::to_string(request.min_level) +
         " and " + std::to_string(request.max_level) + ".";
  return p;
}

std::string cefr_prompt(const CefrRequest& request, bool strict_hint) {
  // Level descriptions for the four-level bracket used by the essay
  // datasets. The B2 writing descriptor is quoted from the CEFR global
  // scale; neighbors are condensed from the same scale.
  std::string p = "Question:\n" + request.question + "\n\n";
  p += "Evaluate the following answer based on CEFR writing level definitions:\n";
  for (std::size_t i = 0; i < request.bracket.size(); ++i) {
    const std::string& name = request.bracket[i];
    p += "- " + name + ": ";
    if (name == "A2") {
      p += "Can write short, simple notes and messages on familiar topics.";
    } else if (name == "B1") {
      p += "Can write simple connected text on topics which are familiar or of "
           "personal interest.";
    } else if (name == "B2") {
      p += "Can write clear, detailed texts on different subjects. Can use "
           "information and arguments from other sources in their writing.";
    } else if (name == "C1") {
      p += "Can write clear, well-structured text on complex subjects, expanding "
           "and supporting points of view at some length.";
    } else if (name == "C2") {
      p += "Can write complex texts with clarity and fluency in an appropriate "
           "and effective style.";
    } else {
      p += "Proficiency level " + std::to_string(i + 1) + " of " +
           std::to_string(request.bracket.size()) + ".";
    }
    p += "\n";
  }
  p += "\nAnswer:\n" + request.answer + "\n\n";
  p += "Which CEFR level best describes this answer? Reply with the level name only "
       "(for example: B2).";
  if (strict_hint) {
    p += "\nReply with exactly one of:";
    for (const auto& name : request.bracket) p += " " + name;
    p += ".";
  }
  return p;
}

}  // namespace ahpeval::prompts
