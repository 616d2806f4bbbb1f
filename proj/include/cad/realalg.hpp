#pragma once

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "cad/polynomial.hpp"
#include "cad/rational.hpp"

namespace cad {

/// Dense univariate polynomial with integer coefficients; coeffs()[i] multiplies x^i.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Integer> coeffs);

  /// Integer-primitive image of a polynomial that involves at most `v`.
  static UPoly from_polynomial(const Polynomial& p, Var v);
  Polynomial to_polynomial(std::size_t nvars, Var v) const;

  const std::vector<Integer>& coeffs() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const Integer& leading() const { return c_.back(); }

  int sign_at(const Rational& x) const;
  Rational evaluate(const Rational& x) const;
  UPoly derivative() const;
  /// x -> -x
  UPoly reflect() const;
  UPoly primitive() const;

  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void trim();
  std::vector<Integer> c_;
};

UPoly gcd(const UPoly& a, const UPoly& b);
UPoly exact_quotient(const UPoly& a, const UPoly& b);
UPoly squarefree_part(const UPoly& p);
std::string to_string(const UPoly& p, const std::string& var = "x");

/// A real algebraic number: a rational, or the unique root of a squarefree
/// integer polynomial in an open rational interval whose endpoints are not roots.
///
/// The isolating interval is a cache that only ever shrinks; refinement goes
/// through const methods. Instances must not be refined from two threads at once.
class AlgebraicNumber {
 public:
  AlgebraicNumber() : AlgebraicNumber(Rational(0)) {}
  explicit AlgebraicNumber(const Rational& q);
  /// `defining` must be squarefree with exactly one root in (lo, hi) and a sign change there.
  AlgebraicNumber(std::shared_ptr<const UPoly> defining, const Rational& lo, const Rational& hi);

  bool is_rational() const noexcept { return rational_; }
  const Rational& value() const;
  /// Defining polynomial; x - q for rationals.
  const UPoly& defining() const;
  std::shared_ptr<const UPoly> defining_ptr() const;
  /// Enclosing interval; degenerate [q, q] for rationals.
  const Rational& lower() const noexcept { return rational_ ? value_ : lo_; }
  const Rational& upper() const noexcept { return rational_ ? value_ : hi_; }

  /// One bisection step.
  void refine() const;
  /// Refine until the interval width is at most `width`.
  void refine_to(const Rational& width) const;
  double approx() const;

  /// `root(<poly>, <lo>, <hi>)` or the plain rational.
  std::string to_string(const std::string& var = "x") const;

 private:
  mutable bool rational_ = true;
  mutable Rational value_;
  std::shared_ptr<const UPoly> defining_;
  mutable std::shared_ptr<const UPoly> linear_;
  mutable Rational lo_, hi_;
  mutable int sign_lo_ = 0;
};

using SamplePoint = std::vector<AlgebraicNumber>;

/// Distinct real roots, increasing. Throws UndefinedInput for the zero polynomial.
std::vector<AlgebraicNumber> isolate_real_roots(const UPoly& p);
std::vector<AlgebraicNumber> isolate_real_roots(const Polynomial& p, Var v);

/// Number of real roots in the open interval (lo, hi) of a squarefree polynomial
/// whose endpoints are not roots, by Descartes' bound; exact when it returns 0 or 1.
unsigned descartes_bound(const UPoly& p, const Rational& lo, const Rational& hi);

std::strong_ordering compare(const AlgebraicNumber& a, const AlgebraicNumber& b);
inline bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) == 0; }

/// Exact sign of p at s; s must cover every variable p involves.
int sign_at(const Polynomial& p, const SamplePoint& s);

struct RootsAbove {
  bool nullified = false;
  std::vector<AlgebraicNumber> roots;
};

/// Real roots in v of p specialized at the lower coordinates s.
RootsAbove roots_above(const Polynomial& p, const SamplePoint& s, Var v);

/// Closed rational interval, used for enclosures.
struct Interval {
  Rational lo, hi;
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
};

/// Enclosure of p over the box of the coordinates' isolating intervals.
Interval evaluate_interval(const Polynomial& p, const SamplePoint& s);

}  // namespace cad
