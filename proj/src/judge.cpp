#include "ahpeval/judge.hpp"

#include <cctype>
#include <string>

#include "ahpeval/error.hpp"
#include "ahpeval/prompts.hpp"
#include "ahpeval/util.hpp"

namespace ahpeval {

void JudgeRequest::validate() const {
  if (id_a.empty() || id_b.empty() || id_a == id_b)
    throw ValidationError("judge request needs two distinct response ids");
  if (trim(question).empty()) throw ValidationError("judge request has empty question");
  if (trim(answer_a).empty() || trim(answer_b).empty())
    throw ValidationError("judge request for (" + id_a + "," + id_b +
                          ") has an empty answer text");
  if (criterion && trim(*criterion).empty())
    throw ValidationError("judge request has an empty criterion");
}

std::string Backend::template_version() const { return std::string(prompts::kVersion); }

std::string judgment_cache_key(const std::string& backend_id, const std::string& model_id,
                               const std::string& template_version,
                               const std::optional<std::string>& criterion,
                               const std::string& question, const std::string& id_a,
                               const std::string& id_b) {
  std::string question_digest = hex_digest(question);
  return hex_digest(join_fields({backend_id, model_id, template_version,
                                 criterion ? "criterion" : "none",
                                 criterion ? *criterion : "", question_digest, id_a,
                                 id_b}));
}

std::string judgment_cache_key(const Backend& backend, const JudgeRequest& request) {
  return judgment_cache_key(backend.backend_id(), backend.model_id(),
                            backend.template_version(), request.criterion,
                            request.question, request.id_a, request.id_b);
}

namespace {

std::optional<JudgmentScale> scale_from_letter(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'A': return JudgmentScale::first_much_better;
    case 'B': return JudgmentScale::first_slightly_better;
    case 'C': return JudgmentScale::tie;
    case 'D': return JudgmentScale::second_slightly_better;
    case 'E': return JudgmentScale::second_much_better;
    default: return std::nullopt;
  }
}

struct Token {
  std::string text;  // lowercase
  std::size_t begin = 0, end = 0;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!std::isalnum(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t b = i;
    while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
    tokens.push_back({to_lower(text.substr(b, i - b)), b, i});
  }
  return tokens;
}

// Option-label extraction. Bare "a" is accepted only in unambiguous
// positions since it doubles as the English article.
std::optional<JudgmentScale> find_label(const std::string& text) {
  std::string stripped;
  for (char c : text)
    if (std::isalnum(static_cast<unsigned char>(c))) stripped += c;
  if (stripped.size() == 1) return scale_from_letter(stripped[0]);

  // "(X)" anywhere.
  for (std::size_t i = 0; i + 2 < text.size(); ++i) {
    if (text[i] == '(' && text[i + 2] == ')') {
      if (auto s = scale_from_letter(text[i + 1])) return s;
    }
  }

  std::vector<Token> tokens = tokenize(text);

  // A keyword followed by a single-letter token: "option B", "Answer: C".
  static const std::vector<std::string> kKeywords = {
      "option", "choice", "answer", "select", "selected", "choose", "pick", "letter"};
  for (std::size_t t = 0; t + 1 < tokens.size(); ++t) {
    bool is_keyword = false;
    for (const auto& kw : kKeywords) is_keyword = is_keyword || tokens[t].text == kw;
    if (is_keyword && tokens[t + 1].text.size() == 1) {
      if (auto s = scale_from_letter(tokens[t + 1].text[0])) return s;
    }
  }

  // Leading label with trailing punctuation: "B) because ...", "C. ...".
  if (!tokens.empty() && tokens[0].text.size() == 1 && tokens[0].end < text.size()) {
    char after = text[tokens[0].end];
    if (after == ')' || after == '.' || after == ':' || after == ',' || after == '-') {
      if (auto s = scale_from_letter(tokens[0].text[0])) return s;
    }
  }

  // A standalone letter other than "a" anywhere.
  for (const Token& tok : tokens) {
    if (tok.text.size() == 1 && tok.text[0] != 'a') {
      if (auto s = scale_from_letter(tok.text[0])) return s;
    }
  }
  return std::nullopt;
}

// Boundary-checked substring search on lowercase text; returns position
// or npos.
std::size_t find_word_phrase(const std::string& lower, const std::string& phrase,
                             std::size_t from = 0) {
  std::size_t pos = from;
  while ((pos = lower.find(phrase, pos)) != std::string::npos) {
    bool left_ok =
        pos == 0 || !std::isalnum(static_cast<unsigned char>(lower[pos - 1]));
    std::size_t end = pos + phrase.size();
    bool right_ok =
        end >= lower.size() || !std::isalnum(static_cast<unsigned char>(lower[end]));
    if (left_ok && right_ok) return pos;
    ++pos;
  }
  return std::string::npos;
}

std::optional<JudgmentScale> find_phrase(const std::string& raw) {
  std::string lower = to_lower(raw);

  static const std::vector<std::string> kTiePhrases = {
      "almost the same", "about the same", "roughly the same", "equally good",
      "equal quality",   "no clear winner", "too close to call", "tie",
      "tied",            "same quality"};
  for (const auto& p : kTiePhrases)
    if (find_word_phrase(lower, p) != std::string::npos) return JudgmentScale::tie;

  std::size_t better_pos = find_word_phrase(lower, "better");
  std::size_t worse_pos = find_word_phrase(lower, "worse");
  bool inverted = false;
  std::size_t cmp_pos = better_pos;
  if (cmp_pos == std::string::npos || (worse_pos != std::string::npos && worse_pos < cmp_pos)) {
    cmp_pos = worse_pos;
    inverted = true;
  }
  if (cmp_pos == std::string::npos) return std::nullopt;

  static const std::vector<std::string> kFirstSide = {
      "answer 1", "answer i", "answer a", "answer one", "response 1", "first", "former"};
  static const std::vector<std::string> kSecondSide = {
      "answer 2", "answer j", "answer b", "answer two", "response 2", "second", "latter"};

  // The subject is the side phrase closest before the comparator.
  auto last_before = [&](const std::vector<std::string>& phrases) {
    std::size_t best = std::string::npos;
    for (const auto& p : phrases) {
      std::size_t pos = 0;
      while ((pos = find_word_phrase(lower, p, pos)) != std::string::npos && pos < cmp_pos) {
        if (best == std::string::npos || pos > best) best = pos;
        ++pos;
      }
    }
    return best;
  };
  std::size_t first_at = last_before(kFirstSide);
  std::size_t second_at = last_before(kSecondSide);
  if (first_at == std::string::npos && second_at == std::string::npos) {
    if (find_word_phrase(lower, "neither") != std::string::npos) return JudgmentScale::tie;
    return std::nullopt;
  }
  bool first_subject =
      second_at == std::string::npos ||
      (first_at != std::string::npos && first_at > second_at);

  static const std::vector<std::string> kSlight = {"slightly", "a bit", "somewhat",
                                                   "marginally", "a little"};
  bool slight = false;
  for (const auto& p : kSlight) {
    std::size_t pos = find_word_phrase(lower, p);
    if (pos != std::string::npos && pos < cmp_pos && cmp_pos - pos <= 24) slight = true;
  }

  bool first_wins = first_subject != inverted;
  if (first_wins)
    return slight ? JudgmentScale::first_slightly_better
                  : JudgmentScale::first_much_better;
  return slight ? JudgmentScale::second_slightly_better
                : JudgmentScale::second_much_better;
}

}  // namespace

std::optional<JudgmentScale> try_parse_judgment(const std::string& raw) {
  if (trim(raw).empty()) return std::nullopt;
  if (auto s = find_label(raw)) return s;
  return find_phrase(raw);
}

JudgmentScale parse_judgment(const std::string& raw) {
  if (auto s = try_parse_judgment(raw)) return *s;
  throw ParseError("no judgment option recognizable in backend output", raw);
}

JudgeRecord compare(Backend& backend, const JudgeRequest& request) {
  request.validate();
  constexpr int kParseAttempts = 3;  // first try plus two strict re-prompts
  int attempts = 0;
  long tokens = 0;
  std::string last_raw;
  for (int i = 0; i < kParseAttempts; ++i) {
    CompletionResult res = backend.compare_raw(request, i > 0);
    attempts += res.attempts;
    tokens += res.tokens;
    last_raw = res.text;
    if (auto parsed = try_parse_judgment(res.text)) {
      JudgeRecord record;
      record.key = judgment_cache_key(backend, request);
      record.backend_id = backend.backend_id();
      record.model_id = backend.model_id();
      record.template_version = backend.template_version();
      record.criterion = request.criterion;
      record.id_a = request.id_a;
      record.id_b = request.id_b;
      record.raw = res.text;
      record.parsed = *parsed;
      record.timestamp = iso8601_utc_now();
      record.attempts = attempts;
      record.tokens = tokens;
      return record;
    }
  }
  throw ParseError("judgment for pair (" + request.id_a + "," + request.id_b +
                       ") unparseable after " + std::to_string(kParseAttempts) +
                       " attempts",
                   last_raw);
}

}  // namespace ahpeval
