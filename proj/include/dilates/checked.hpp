#pragma once

#include <cstdint>
#include <numeric>

#include "errors.hpp"

namespace dilates {

// Point coordinates. All coordinate arithmetic is overflow-checked; a result
// outside the 64-bit range raises overflow_error instead of wrapping.
using Coord = std::int64_t;

inline Coord checked_add(Coord a, Coord b) {
  Coord r;
  if (__builtin_add_overflow(a, b, &r)) throw overflow_error("coordinate overflow in addition");
  return r;
}

inline Coord checked_sub(Coord a, Coord b) {
  Coord r;
  if (__builtin_sub_overflow(a, b, &r)) throw overflow_error("coordinate overflow in subtraction");
  return r;
}

inline Coord checked_mul(Coord a, Coord b) {
  Coord r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("coordinate overflow in multiplication");
  return r;
}

// a^b for small exponents, checked. b >= 0.
inline Coord checked_pow(Coord a, int b) {
  Coord r = 1;
  for (int i = 0; i < b; ++i) r = checked_mul(r, a);
  return r;
}

// lcm(a, b) for positive a, b, checked.
inline Coord checked_lcm(Coord a, Coord b) {
  Coord g = std::gcd(a, b);
  return checked_mul(a / g, b);
}

}  // namespace dilates
