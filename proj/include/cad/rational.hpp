#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace cad {

using Integer = mpz_class;
using Rational = mpq_class;

inline int sign(const Integer& z) { return sgn(z); }
inline int sign(const Rational& q) { return sgn(q); }

inline std::strong_ordering compare3(const Rational& a, const Rational& b) {
  int c = cmp(a, b);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// The rational with the smallest denominator (then numerator) in the open interval (lo, hi).
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace cad
