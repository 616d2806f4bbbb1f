#include <algorithm>
#include <sstream>

#include "cad/error.hpp"
#include "cad/realalg.hpp"

namespace cad {

UPoly::UPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::from_polynomial(const Polynomial& p, Var v) {
  Polynomial q = integer_primitive(p);
  std::vector<Integer> c(q.is_zero() ? 0 : q.degree_in(v) + 1);
  for (const auto& t : q.terms()) {
    for (std::size_t i = 0; i < t.exponents.size(); ++i)
      if (i != v && t.exponents[i] != 0) fail(ErrorKind::Precondition, "polynomial is not univariate in the requested variable");
    c[t.exponents[v]] = t.coef.get_num();
  }
  return UPoly(std::move(c));
}

Polynomial UPoly::to_polynomial(std::size_t nvars, Var v) const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Exponents e(nvars, 0);
    e[v] = static_cast<std::uint32_t>(i);
    terms.push_back(Term{std::move(e), Rational(c_[i])});
  }
  return Polynomial::from_terms(nvars, std::move(terms));
}

int UPoly::sign_at(const Rational& x) const {
  if (c_.empty()) return 0;
  // Homogenized Horner in integers: sum c_i num^i den^(n-i).
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  Integer acc = c_.back();
  Integer dpow = 1;
  for (std::size_t i = c_.size() - 1; i-- > 0;) {
    dpow *= den;
    acc = acc * num + c_[i] * dpow;
  }
  return sgn(acc);
}

Rational UPoly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + Rational(c_[i]);
  return acc;
}

UPoly UPoly::derivative() const {
  std::vector<Integer> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
  return UPoly(std::move(d));
}

UPoly UPoly::reflect() const {
  std::vector<Integer> r = c_;
  for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
  return UPoly(std::move(r));
}

UPoly UPoly::primitive() const {
  if (c_.empty()) return *this;
  Integer g = 0;
  for (const auto& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (c_.back() < 0) g = -g;
  std::vector<Integer> r;
  r.reserve(c_.size());
  for (const auto& x : c_) r.push_back(x / g);
  return UPoly(std::move(r));
}

namespace {

// Remainder of a * lc(b)^k by b over Z (pseudo-remainder).
UPoly pseudo_rem(const UPoly& a, const UPoly& b) {
  std::vector<Integer> r = a.coeffs();
  const auto& bc = b.coeffs();
  const int db = b.degree();
  const Integer& lb = b.leading();
  while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
    Integer lr = r.back();
    int s = static_cast<int>(r.size()) - 1 - db;
    for (auto& x : r) x *= lb;
    for (int j = 0; j <= db; ++j) r[j + s] -= lr * bc[j];
    r.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return UPoly(std::move(r));
}

}  // namespace

UPoly gcd(const UPoly& a0, const UPoly& b0) {
  if (a0.is_zero()) return b0.primitive();
  if (b0.is_zero()) return a0.primitive();
  UPoly a = a0.primitive(), b = b0.primitive();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree() == 0) return UPoly({Integer(1)});
    UPoly r = pseudo_rem(a, b).primitive();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

UPoly exact_quotient(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) fail(ErrorKind::UndefinedInput, "division by zero polynomial");
  std::vector<Rational> r(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  if (a.degree() < db) {
    if (a.is_zero()) return a;
    fail(ErrorKind::Internal, "inexact univariate division");
  }
  std::vector<Rational> q(a.degree() - db + 1);
  Rational lb(b.leading());
  for (int i = a.degree() - db; i >= 0; --i) {
    Rational f = r[i + db] / lb;
    q[i] = f;
    for (int j = 0; j <= db; ++j) r[i + j] -= f * Rational(b.coeffs()[j]);
  }
  for (int j = 0; j < db; ++j)
    if (r[j] != 0) fail(ErrorKind::Internal, "inexact univariate division");
  Integer lcm = 1;
  for (const auto& x : q) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> out;
  for (const auto& x : q) out.push_back(Rational(x * Rational(lcm)).get_num());
  return UPoly(std::move(out));
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 1) return p.primitive();
  UPoly g = gcd(p, p.derivative());
  if (g.degree() == 0) return p.primitive();
  return exact_quotient(p, g).primitive();
}

std::string to_string(const UPoly& p, const std::string& var) {
  VarOrder order({var});
  return to_string(p.to_polynomial(1, 0), order);
}

}  // namespace cad
