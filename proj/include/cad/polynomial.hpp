#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cad/rational.hpp"

namespace cad {

/// Position of a variable in a VarOrder; 0 is the lowest (projected last).
using Var = std::size_t;

/// Ordered, duplicate-free list of variable names, lowest first.
class VarOrder {
 public:
  VarOrder() = default;
  explicit VarOrder(std::vector<std::string> names);

  /// "y,x" -> (y, x) with y lowest.
  static VarOrder from_csv(std::string_view csv);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::string& name(Var v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Var> find(std::string_view name) const;
  /// Throws OrderingMismatch for unknown names.
  Var index(std::string_view name) const;
  std::string to_csv() const;

  friend bool operator==(const VarOrder&, const VarOrder&) = default;

 private:
  std::vector<std::string> names_;
};

bool is_valid_identifier(std::string_view s);

using Exponents = boost::container::small_vector<std::uint32_t, 8>;

/// Lex comparison with the highest variable most significant.
std::strong_ordering lex_compare(const Exponents& a, const Exponents& b);

struct Term {
  Exponents exponents;
  Rational coef;
};

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// Terms are kept sorted by descending lex order with no zero coefficients,
/// so structural equality is polynomial equality.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, Var v, std::uint32_t power = 1);
  static Polynomial monomial(Exponents exps, const Rational& c);
  /// Canonicalizes: sorts, merges duplicates, drops zeros.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);
  /// Inverse of coefficients(): sum of coeffs[i] * v^i.
  static Polynomial from_coefficients(std::size_t nvars, const std::vector<Polynomial>& coeffs, Var v);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Value of a constant polynomial (0 for the zero polynomial).
  Rational constant_value() const;

  std::size_t degree_in(Var v) const;
  std::size_t total_degree() const;
  /// Highest variable with positive degree; nullopt for constants.
  std::optional<Var> main_var() const;
  bool involves(Var v) const;
  /// Largest per-variable degree.
  std::size_t max_degree() const;

  const Term& leading_term() const;
  const Rational& leading_coef() const { return leading_term().coef; }

  /// Dense coefficient list in `v`: result[i] is the coefficient of v^i.
  std::vector<Polynomial> coefficients(Var v) const;
  Polynomial leading_coefficient(Var v) const;
  Polynomial derivative(Var v) const;
  Polynomial substitute(Var v, const Rational& value) const;
  /// Evaluate at a full point (one value per variable).
  Rational evaluate(const std::vector<Rational>& point) const;
  /// Re-index variables: variable i moves to mapping[i] in a ring of `nvars` variables.
  Polynomial remap(const std::vector<Var>& mapping, std::size_t nvars) const;

  Polynomial pow(unsigned e) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  /// Deterministic total order (used for sets); not a mathematical order.
  friend bool operator<(const Polynomial& a, const Polynomial& b);

 private:
  Polynomial add_scaled(const Polynomial& o, const Rational& factor) const;

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

using PolySet = std::set<Polynomial>;

/// a / b; throws Internal if the division is not exact.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);
std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b);

/// Canonical associate: integer coefficients with content 1, positive leading coefficient.
Polynomial normalize(const Polynomial& p);
/// Like normalize but keeps the sign (positive scaling only).
Polynomial integer_primitive(const Polynomial& p);

/// Normalized gcd over Q[x1..xn]; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

struct ContentPrimitive {
  Polynomial content;
  Polynomial primitive;
};

/// Content w.r.t. `v` (normalized) and p / content. Throws UndefinedInput for p = 0.
ContentPrimitive content_primitive(const Polynomial& p, Var v);
bool is_primitive(const Polynomial& p, Var v);

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, Var v);

/// Sylvester resultant w.r.t. v (exact, including sign), via subresultant PRS.
/// Throws DegenerateResultant when either argument is constant in v.
Polynomial resultant(const Polynomial& p, const Polynomial& q, Var v);

/// (-1)^(d(d-1)/2) res(p, p') / lc(p). Throws DegenerateDiscriminant for degree < 2.
Polynomial discriminant(const Polynomial& p, Var v);

/// p / gcd(p, dp/dv) for p primitive in v; normalized.
Polynomial squarefree_part(const Polynomial& p, Var v);

/// Pairwise coprime, squarefree, normalized, non-constant polynomials with the
/// same zero set as the product of the inputs. Contents w.r.t. v are kept as
/// separate members. Throws UndefinedInput on a zero input.
std::vector<Polynomial> squarefree_basis(const std::vector<Polynomial>& ps, Var v);

std::string to_string(const Polynomial& p, const VarOrder& order);

/// Parse the polynomial text grammar; every variable must occur in `order`.
Polynomial parse_polynomial(std::string_view text, const VarOrder& order);

}  // namespace cad
