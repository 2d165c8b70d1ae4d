#include "ahpeval/judgment.hpp"

#include <string>

#include "ahpeval/error.hpp"

namespace ahpeval {

JudgmentScale mirror(JudgmentScale s) {
  switch (s) {
    case JudgmentScale::first_much_better: return JudgmentScale::second_much_better;
    case JudgmentScale::first_slightly_better: return JudgmentScale::second_slightly_better;
    case JudgmentScale::tie: return JudgmentScale::tie;
    case JudgmentScale::second_slightly_better: return JudgmentScale::first_slightly_better;
    case JudgmentScale::second_much_better: return JudgmentScale::first_much_better;
  }
  throw Error(ErrorKind::internal, "unknown JudgmentScale");
}

std::string_view to_string(JudgmentScale s) {
  switch (s) {
    case JudgmentScale::first_much_better: return "first_much_better";
    case JudgmentScale::first_slightly_better: return "first_slightly_better";
    case JudgmentScale::tie: return "tie";
    case JudgmentScale::second_slightly_better: return "second_slightly_better";
    case JudgmentScale::second_much_better: return "second_much_better";
  }
  throw Error(ErrorKind::internal, "unknown JudgmentScale");
}

JudgmentScale judgment_from_string(std::string_view s) {
  for (JudgmentScale j : kAllJudgments) {
    if (to_string(j) == s) return j;
  }
  throw ValidationError("unknown judgment name: " + std::string(s));
}

JudgmentValue judgment_to_value(JudgmentScale judgment, ScaleConvention convention) {
  switch (judgment) {
    case JudgmentScale::first_much_better: return JudgmentValue(Ratio(5, 1));
    case JudgmentScale::first_slightly_better: return JudgmentValue(Ratio(3, 1));
    case JudgmentScale::tie: return JudgmentValue(Ratio(1, 1));
    case JudgmentScale::second_slightly_better:
      return JudgmentValue(convention == ScaleConvention::reciprocal ? Ratio(1, 3)
                                                                     : Ratio(1, 5));
    case JudgmentScale::second_much_better:
      return JudgmentValue(convention == ScaleConvention::reciprocal ? Ratio(1, 5)
                                                                     : Ratio(1, 3));
  }
  throw Error(ErrorKind::internal, "unknown JudgmentScale");
}

}  // namespace ahpeval
