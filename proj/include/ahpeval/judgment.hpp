#pragma once

#include <array>
#include <string_view>

#include "ahpeval/rational.hpp"

namespace ahpeval {

// Five-option outcome of one pairwise comparison. "first" refers to the
// answer presented first (the lower id of the pair).
enum class JudgmentScale {
  first_much_better,
  first_slightly_better,
  tie,
  second_slightly_better,
  second_much_better,
};

inline constexpr std::array<JudgmentScale, 5> kAllJudgments = {
    JudgmentScale::first_much_better,   JudgmentScale::first_slightly_better,
    JudgmentScale::tie,                 JudgmentScale::second_slightly_better,
    JudgmentScale::second_much_better,
};

// Swaps the roles of the two answers; involution fixing tie.
JudgmentScale mirror(JudgmentScale s);

std::string_view to_string(JudgmentScale s);
JudgmentScale judgment_from_string(std::string_view s);

// How judgments favoring the second answer map to the (i,j) entry.
// `reciprocal` enforces entry(i,j) = 1/entry(j,i) semantics across
// mirrored judgments; `literal` keeps the printed assignment (1/3 for a
// strong second-answer win, 1/5 for a slight one).
enum class ScaleConvention { reciprocal, literal };

// One of {5, 3, 1, 1/3, 1/5}; nothing else is constructible.
class JudgmentValue {
 public:
  Ratio ratio() const noexcept { return ratio_; }
  double value() const noexcept { return ratio_.value(); }

 private:
  explicit JudgmentValue(Ratio r) : ratio_(r) {}
  friend JudgmentValue judgment_to_value(JudgmentScale, ScaleConvention);
  Ratio ratio_;
};

// The (i,j) matrix entry for a judgment on the ordered pair (i, j); the
// (j,i) entry is its reciprocal.
JudgmentValue judgment_to_value(JudgmentScale judgment,
                                ScaleConvention convention = ScaleConvention::reciprocal);

}  // namespace ahpeval
