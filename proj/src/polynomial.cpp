#include "cad/polynomial.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "cad/error.hpp"

namespace cad {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::OrderingMismatch: return "ordering-mismatch";
    case ErrorKind::UndefinedInput: return "undefined-input";
    case ErrorKind::DegenerateResultant: return "degenerate-resultant";
    case ErrorKind::DegenerateDiscriminant: return "degenerate-discriminant";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::WellOriented: return "well-orientedness";
    case ErrorKind::PrimitivityViolation: return "primitivity-violation";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
  // Stern-Brocot descent on (lo, hi) with lo < hi.
  if (lo < 0 && hi > 0) return Rational(0);
  if (hi <= 0) return -simplest_between(-hi, -lo);
  Integer fl = floor(lo);
  Integer cand = fl + 1;
  if (Rational(cand) < hi) return Rational(cand);
  // lo and hi lie in [fl, fl+1]; recurse on reciprocals of the fractional parts.
  Rational flo = lo - Rational(fl);
  Rational fhi = hi - Rational(fl);
  if (flo == 0) {
    // Interval (fl, fl + fhi): take fl + 1/k with the smallest k such that 1/k < fhi.
    Integer k = floor(Rational(1) / fhi) + 1;
    Rational r = Rational(fl) + Rational(1) / Rational(k);
    r.canonicalize();
    return r;
  }
  Rational inner = simplest_between(Rational(1) / fhi, Rational(1) / flo);
  Rational r = Rational(fl) + Rational(1) / inner;
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------- VarOrder

bool is_valid_identifier(std::string_view s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

VarOrder::VarOrder(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!is_valid_identifier(names_[i])) fail(ErrorKind::OrderingMismatch, "invalid variable name '" + names_[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[j] == names_[i]) fail(ErrorKind::OrderingMismatch, "duplicate variable '" + names_[i] + "'");
  }
}

VarOrder VarOrder::from_csv(std::string_view csv) {
  std::vector<std::string> names;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      names.push_back(cur);
      cur.clear();
    } else if (c != ' ' && c != '\t') {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || !names.empty()) names.push_back(cur);
  return VarOrder(std::move(names));
}

std::optional<Var> VarOrder::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

Var VarOrder::index(std::string_view name) const {
  auto v = find(name);
  if (!v) fail(ErrorKind::OrderingMismatch, "variable '" + std::string(name) + "' not in ordering");
  return *v;
}

std::string VarOrder::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (i) out += ',';
    out += names_[i];
  }
  return out;
}

// ---------------------------------------------------------------- monomials

std::strong_ordering lex_compare(const Exponents& a, const Exponents& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] <=> b[i];
  }
  return std::strong_ordering::equal;
}

namespace {

bool lex_greater(const Term& a, const Term& b) { return lex_compare(a.exponents, b.exponents) > 0; }

Exponents add_exps(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents sub_exps(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

void check_var(const Polynomial& p, Var v) {
  if (v >= p.nvars())
    fail(ErrorKind::OrderingMismatch, "variable index " + std::to_string(v) + " outside ring of " +
                                          std::to_string(p.nvars()) + " variables");
}

void check_same_ring(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars())
    fail(ErrorKind::OrderingMismatch, "polynomials live in rings of different size");
}

}  // namespace

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  if (c != 0) p.terms_.push_back(Term{Exponents(nvars, 0), c});
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, Var v, std::uint32_t power) {
  if (v >= nvars) fail(ErrorKind::OrderingMismatch, "variable index outside ring");
  Polynomial p(nvars);
  Exponents e(nvars, 0);
  e[v] = power;
  p.terms_.push_back(Term{std::move(e), Rational(1)});
  return p;
}

Polynomial Polynomial::monomial(Exponents exps, const Rational& c) {
  Polynomial p(exps.size());
  if (c != 0) p.terms_.push_back(Term{std::move(exps), c});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
  Polynomial p(nvars);
  std::sort(terms.begin(), terms.end(), lex_greater);
  for (auto& t : terms) {
    if (t.exponents.size() != nvars) fail(ErrorKind::OrderingMismatch, "term arity mismatch");
    if (!p.terms_.empty() && p.terms_.back().exponents == t.exponents) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
  return p;
}

Polynomial Polynomial::from_coefficients(std::size_t nvars, const std::vector<Polynomial>& coeffs, Var v) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    for (const auto& t : coeffs[i].terms()) {
      Term nt = t;
      nt.exponents[v] += static_cast<std::uint32_t>(i);
      terms.push_back(std::move(nt));
    }
  }
  return from_terms(nvars, std::move(terms));
}

bool Polynomial::is_constant() const noexcept {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (auto e : terms_[0].exponents)
    if (e) return false;
  return true;
}

Rational Polynomial::constant_value() const {
  if (!is_constant()) fail(ErrorKind::Precondition, "constant_value of a non-constant polynomial");
  return terms_.empty() ? Rational(0) : terms_[0].coef;
}

std::size_t Polynomial::degree_in(Var v) const {
  check_var(*this, v);
  std::size_t d = 0;
  for (const auto& t : terms_) d = std::max<std::size_t>(d, t.exponents[v]);
  return d;
}

std::size_t Polynomial::total_degree() const {
  std::size_t d = 0;
  for (const auto& t : terms_) {
    std::size_t s = 0;
    for (auto e : t.exponents) s += e;
    d = std::max(d, s);
  }
  return d;
}

std::size_t Polynomial::max_degree() const {
  std::size_t d = 0;
  for (const auto& t : terms_)
    for (auto e : t.exponents) d = std::max<std::size_t>(d, e);
  return d;
}

std::optional<Var> Polynomial::main_var() const {
  // The lex-leading term carries the highest variable present.
  if (terms_.empty()) return std::nullopt;
  const auto& e = terms_[0].exponents;
  for (std::size_t i = e.size(); i-- > 0;)
    if (e[i]) return i;
  return std::nullopt;
}

bool Polynomial::involves(Var v) const {
  check_var(*this, v);
  for (const auto& t : terms_)
    if (t.exponents[v]) return true;
  return false;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) fail(ErrorKind::UndefinedInput, "leading term of the zero polynomial");
  return terms_[0];
}

std::vector<Polynomial> Polynomial::coefficients(Var v) const {
  check_var(*this, v);
  std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
  for (const auto& t : terms_) {
    Term nt = t;
    auto d = nt.exponents[v];
    nt.exponents[v] = 0;
    buckets[d].push_back(std::move(nt));
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  // Stripping v preserves relative lex order within a bucket.
  for (auto& b : buckets) {
    Polynomial p(nvars_);
    p.terms_ = std::move(b);
    out.push_back(std::move(p));
  }
  if (terms_.empty()) out.assign(1, Polynomial(nvars_));
  return out;
}

Polynomial Polynomial::leading_coefficient(Var v) const {
  auto cs = coefficients(v);
  return cs.back();
}

Polynomial Polynomial::derivative(Var v) const {
  check_var(*this, v);
  std::vector<Term> terms;
  for (const auto& t : terms_) {
    if (t.exponents[v] == 0) continue;
    Term nt = t;
    nt.coef *= nt.exponents[v];
    nt.exponents[v] -= 1;
    terms.push_back(std::move(nt));
  }
  return from_terms(nvars_, std::move(terms));
}

Polynomial Polynomial::substitute(Var v, const Rational& value) const {
  check_var(*this, v);
  if (!involves(v)) return *this;
  std::size_t d = degree_in(v);
  Rational x = value;
  x.canonicalize();
  std::vector<Rational> powers(d + 1);
  powers[0] = 1;
  for (std::size_t i = 1; i <= d; ++i) powers[i] = powers[i - 1] * x;
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term nt = t;
    nt.coef *= powers[nt.exponents[v]];
    nt.exponents[v] = 0;
    if (nt.coef != 0) terms.push_back(std::move(nt));
  }
  return from_terms(nvars_, std::move(terms));
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  if (point.size() < nvars_) fail(ErrorKind::DimensionMismatch, "evaluation point too short");
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational m = t.coef;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (std::uint32_t k = 0; k < t.exponents[i]; ++k) m *= point[i];
    }
    sum += m;
  }
  return sum;
}

Polynomial Polynomial::remap(const std::vector<Var>& mapping, std::size_t nvars) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term nt{Exponents(nvars, 0), t.coef};
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.exponents[i] == 0) continue;
      if (i >= mapping.size() || mapping[i] >= nvars) fail(ErrorKind::OrderingMismatch, "variable has no image in target ring");
      nt.exponents[mapping[i]] += t.exponents[i];
    }
    terms.push_back(std::move(nt));
  }
  return from_terms(nvars, std::move(terms));
}

Polynomial Polynomial::add_scaled(const Polynomial& o, const Rational& factor) const {
  check_same_ring(*this, o);
  Polynomial r(nvars_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end()) {
      r.terms_.push_back(*i++);
      continue;
    }
    if (i == terms_.end()) {
      r.terms_.push_back(Term{j->exponents, j->coef * factor});
      ++j;
      continue;
    }
    auto c = lex_compare(i->exponents, j->exponents);
    if (c > 0) {
      r.terms_.push_back(*i++);
    } else if (c < 0) {
      r.terms_.push_back(Term{j->exponents, j->coef * factor});
      ++j;
    } else {
      Rational s = i->coef + j->coef * factor;
      if (s != 0) r.terms_.push_back(Term{i->exponents, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  *this = add_scaled(o, Rational(1));
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  *this = add_scaled(o, Rational(-1));
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_same_ring(a, b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.nvars());
  if (b.size() == 1 && a.size() > 1) return b * a;
  if (a.size() == 1) {
    // Monomial times polynomial keeps the order of b.
    Polynomial r(a.nvars());
    r.terms_.reserve(b.size());
    const auto& m = a.terms_[0];
    for (const auto& t : b.terms_) r.terms_.push_back(Term{add_exps(m.exponents, t.exponents), m.coef * t.coef});
    return r;
  }
  std::vector<Term> prods;
  prods.reserve(a.size() * b.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) prods.push_back(Term{add_exps(s.exponents, t.exponents), s.coef * t.coef});
  return Polynomial::from_terms(a.nvars(), std::move(prods));
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(nvars_, Rational(1));
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exponents != b.terms_[i].exponents || a.terms_[i].coef != b.terms_[i].coef) return false;
  }
  return true;
}

bool operator<(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = lex_compare(a.terms_[i].exponents, b.terms_[i].exponents);
    if (c != 0) return c < 0;
    if (a.terms_[i].coef != b.terms_[i].coef) return a.terms_[i].coef < b.terms_[i].coef;
  }
  return a.terms_.size() < b.terms_.size();
}

// ---------------------------------------------------------------- division, gcd

std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b) {
  check_same_ring(a, b);
  if (b.is_zero()) fail(ErrorKind::UndefinedInput, "division by zero polynomial");
  if (b.is_constant()) return a * (Rational(1) / b.constant_value());
  Polynomial r = a;
  std::vector<Term> quot;
  const Term& lb = b.leading_term();
  while (!r.is_zero()) {
    const Term& lr = r.leading_term();
    if (!divides(lb.exponents, lr.exponents)) return std::nullopt;
    Rational c = lr.coef / lb.coef;
    Exponents e = sub_exps(lr.exponents, lb.exponents);
    Polynomial t = Polynomial::monomial(e, c);
    quot.push_back(Term{std::move(e), c});
    r -= t * b;
  }
  // Quotient terms were produced in strictly decreasing order.
  return Polynomial::from_terms(a.nvars(), std::move(quot));
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  auto q = try_divide(a, b);
  if (!q) fail(ErrorKind::Internal, "inexact polynomial division");
  return std::move(*q);
}

Polynomial integer_primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den_lcm = 1;
  Integer num_gcd = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (scale == 1) return p;
  return p * scale;
}

Polynomial normalize(const Polynomial& p) {
  Polynomial r = integer_primitive(p);
  if (!r.is_zero() && r.leading_coef() < 0) r = -r;
  return r;
}

namespace {

Polynomial one_like(const Polynomial& p) { return Polynomial::constant(p.nvars(), Rational(1)); }

Polynomial content_in(const Polynomial& p, Var v);

Polynomial primitive_prs_gcd(Polynomial a, Polynomial b, Var v) {
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  while (true) {
    Polynomial r = pseudo_remainder(a, b, v);
    if (r.is_zero()) return normalize(b);
    if (r.degree_in(v) == 0) return one_like(a);
    a = std::move(b);
    Polynomial c = content_in(r, v);
    b = normalize(exact_divide(r, c));
  }
}

// Univariate fast path over Q: Euclid with integer-primitive remainders.
Polynomial univariate_gcd(Polynomial a, Polynomial b, Var v) { return primitive_prs_gcd(std::move(a), std::move(b), v); }

Polynomial content_in(const Polynomial& p, Var v) {
  if (p.is_zero()) fail(ErrorKind::UndefinedInput, "content of the zero polynomial");
  auto cs = p.coefficients(v);
  Polynomial g(p.nvars());
  // Start with the smallest coefficient; gcd shrinks fastest that way.
  std::vector<const Polynomial*> nz;
  for (const auto& c : cs)
    if (!c.is_zero()) nz.push_back(&c);
  std::sort(nz.begin(), nz.end(), [](const Polynomial* x, const Polynomial* y) { return x->size() < y->size(); });
  for (const Polynomial* c : nz) {
    if (c->is_constant()) return one_like(p);
    g = gcd(g, *c);
    if (g.is_constant()) return one_like(p);
  }
  return g;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  check_same_ring(a, b);
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  if (a.is_constant() || b.is_constant()) return one_like(a);
  if (a == b) return normalize(a);
  Var va = *a.main_var();
  Var vb = *b.main_var();
  Var v = std::max(va, vb);
  if (va != vb) {
    // One side is free of v, so the gcd divides its content in v.
    const Polynomial& high = va > vb ? a : b;
    const Polynomial& low = va > vb ? b : a;
    return gcd(low, content_in(high, v));
  }
  bool univariate = true;
  for (Var u = 0; u < v && univariate; ++u)
    if (a.involves(u) || b.involves(u)) univariate = false;
  if (univariate) return univariate_gcd(a, b, v);
  Polynomial ca = content_in(a, v);
  Polynomial cb = content_in(b, v);
  Polynomial c = gcd(ca, cb);
  Polynomial g = primitive_prs_gcd(exact_divide(a, ca), exact_divide(b, cb), v);
  return normalize(c * g);
}

ContentPrimitive content_primitive(const Polynomial& p, Var v) {
  if (p.is_zero()) fail(ErrorKind::UndefinedInput, "content of the zero polynomial");
  check_var(p, v);
  Polynomial c = content_in(p, v);
  c = normalize(c);
  return ContentPrimitive{c, exact_divide(p, c)};
}

bool is_primitive(const Polynomial& p, Var v) { return content_primitive(p, v).content.is_constant(); }

// ---------------------------------------------------------------- resultants

namespace {

using Coeffs = std::vector<Polynomial>;

void trim(Coeffs& c) {
  while (c.size() > 1 && c.back().is_zero()) c.pop_back();
}

std::size_t deg(const Coeffs& c) { return c.size() - 1; }

bool is_zero(const Coeffs& c) { return c.size() == 1 && c[0].is_zero(); }

Coeffs prem(const Coeffs& a, const Coeffs& b) {
  Coeffs r = a;
  trim(r);
  const std::size_t db = deg(b);
  const Polynomial& lcb = b.back();
  if (deg(r) < db) return r;
  std::size_t e = deg(r) - db + 1;
  while (!is_zero(r) && r.size() - 1 >= db) {
    Polynomial lr = r.back();
    std::size_t s = deg(r) - db;
    for (auto& c : r) c *= lcb;
    for (std::size_t j = 0; j <= db; ++j) r[j + s] -= lr * b[j];
    r.pop_back();
    if (r.empty()) r.push_back(Polynomial(lcb.nvars()));
    trim(r);
    --e;
  }
  if (e > 0 && !is_zero(r)) {
    Polynomial f = lcb.pow(static_cast<unsigned>(e));
    for (auto& c : r) c *= f;
  }
  return r;
}

}  // namespace

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, Var v) {
  check_same_ring(a, b);
  if (b.is_zero()) fail(ErrorKind::UndefinedInput, "pseudo-remainder by zero");
  Coeffs r = prem(a.coefficients(v), b.coefficients(v));
  return Polynomial::from_coefficients(a.nvars(), r, v);
}

Polynomial resultant(const Polynomial& p, const Polynomial& q, Var v) {
  check_same_ring(p, q);
  check_var(p, v);
  if (p.degree_in(v) < 1 || q.degree_in(v) < 1)
    fail(ErrorKind::DegenerateResultant, "resultant needs both arguments of positive degree in the variable");
  const std::size_t n = p.nvars();
  Coeffs a = p.coefficients(v);
  Coeffs b = q.coefficients(v);
  int s = 1;
  if (deg(a) < deg(b)) {
    std::swap(a, b);
    if (deg(a) % 2 == 1 && deg(b) % 2 == 1) s = -1;
  }
  Polynomial g = Polynomial::constant(n, Rational(1));
  Polynomial h = g;
  while (true) {
    std::size_t da = deg(a), db = deg(b);
    std::size_t delta = da - db;
    if (da % 2 == 1 && db % 2 == 1) s = -s;
    Coeffs r = prem(a, b);
    a = std::move(b);
    if (is_zero(r)) return Polynomial(n);
    Polynomial divisor = g * h.pow(static_cast<unsigned>(delta));
    b.clear();
    for (auto& c : r) b.push_back(exact_divide(c, divisor));
    g = a.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact_divide(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
    if (deg(b) == 0) break;
  }
  std::size_t da = deg(a);
  Polynomial lb = b.back();
  Polynomial result = da == 1 ? lb : exact_divide(lb.pow(static_cast<unsigned>(da)), h.pow(static_cast<unsigned>(da - 1)));
  return s < 0 ? -result : result;
}

Polynomial discriminant(const Polynomial& p, Var v) {
  std::size_t d = p.degree_in(v);
  if (d < 2) fail(ErrorKind::DegenerateDiscriminant, "discriminant needs degree at least 2");
  Polynomial r = resultant(p, p.derivative(v), v);
  r = exact_divide(r, p.leading_coefficient(v));
  if ((d * (d - 1) / 2) % 2 == 1) r = -r;
  return r;
}

Polynomial squarefree_part(const Polynomial& p, Var v) {
  if (p.is_zero()) fail(ErrorKind::UndefinedInput, "squarefree part of zero");
  if (p.degree_in(v) == 0) return normalize(p);
  Polynomial g = gcd(p, p.derivative(v));
  return normalize(exact_divide(p, g));
}

namespace {

// Squarefree pieces of p, splitting off contents recursively along main variables.
void squarefree_pieces(const Polynomial& p, Var v, std::vector<Polynomial>& out) {
  if (p.is_constant()) return;
  if (!p.involves(v)) {
    squarefree_pieces(p, *p.main_var(), out);
    return;
  }
  auto [c, pp] = content_primitive(p, v);
  out.push_back(squarefree_part(pp, v));
  if (!c.is_constant()) squarefree_pieces(c, *c.main_var(), out);
}

}  // namespace

std::vector<Polynomial> squarefree_basis(const std::vector<Polynomial>& ps, Var v) {
  std::vector<Polynomial> pieces;
  for (const auto& p : ps) {
    if (p.is_zero()) fail(ErrorKind::UndefinedInput, "squarefree basis of the zero polynomial");
    if (!p.is_constant()) check_var(p, v);
    squarefree_pieces(p, v, pieces);
  }
  std::vector<Polynomial> basis;
  for (auto q : pieces) {
    std::vector<Polynomial> added;
    for (auto& b : basis) {
      if (q.is_constant()) break;
      Polynomial g = gcd(b, q);
      if (g.is_constant()) continue;
      Polynomial rest = normalize(exact_divide(b, g));
      q = exact_divide(q, g);
      b = g;
      if (!rest.is_constant()) added.push_back(std::move(rest));
    }
    for (auto& a : added) basis.push_back(std::move(a));
    if (!q.is_constant()) basis.push_back(normalize(q));
  }
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  return basis;
}

}  // namespace cad
