#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "checked.hpp"
#include "errors.hpp"

namespace dilates {

// Exact rational with positive denominator, always reduced.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t n, std::int64_t d) {
    if (d == 0) throw precondition_error("rational with zero denominator");
    if (d < 0) {
      n = checked_sub(0, n);
      d = checked_sub(0, d);
    }
    std::int64_t g = std::gcd(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    return Rational{n, d};
  }

  bool operator==(const Rational&) const = default;

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace dilates
