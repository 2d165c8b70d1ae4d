#pragma once

#include <numeric>

#include "ahpeval/error.hpp"

namespace ahpeval {

// Exact positive rational. Matrix entries that come from the judgment
// scale constants are built from these so the reciprocal mirror entry is
// den/num rather than 1/(num/den), keeping reciprocity checks tight.
class Ratio {
 public:
  constexpr Ratio(long long num, long long den) : num_(num), den_(den) {
    if (num_ <= 0 || den_ <= 0)
      throw ValidationError("Ratio requires positive numerator and denominator");
    long long g = std::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  constexpr long long num() const noexcept { return num_; }
  constexpr long long den() const noexcept { return den_; }
  constexpr Ratio reciprocal() const { return Ratio(den_, num_); }
  constexpr double value() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend constexpr bool operator==(const Ratio& a, const Ratio& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  long long num_;
  long long den_;
};

}  // namespace ahpeval
