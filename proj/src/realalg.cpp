#include "cad/realalg.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "cad/error.hpp"

namespace cad {

namespace {

constexpr int kRefineCap = 4000;

Rational pow2(long k) {
  Integer one = 1;
  Integer p;
  mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(k < 0 ? -k : k));
  return k >= 0 ? Rational(p) : Rational(Integer(1), p);
}

int sign_variations(const std::vector<Integer>& c) {
  int v = 0, last = 0;
  for (const auto& x : c) {
    int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// In-place Taylor shift p(x) -> p(x + 1).
void taylor_shift_one(std::vector<Integer>& c) {
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j-- > i;) c[j] += c[j + 1];
}

// Descartes sign-variation count for roots of q in (0, 1).
int variations_unit(const std::vector<Integer>& q) {
  std::vector<Integer> r(q.rbegin(), q.rend());
  taylor_shift_one(r);
  return sign_variations(r);
}

struct RawRoot {
  bool exact;
  Rational lo, hi;  // exact: lo == hi
};

// q encodes p on [c/2^k, (c+1)/2^k] (scaled by `scale`) mapped onto [0, 1].
void vca(std::vector<Integer> q, const Integer& c, long k, const Rational& scale, std::vector<RawRoot>& out, int depth) {
  if (depth > 4000) fail(ErrorKind::Internal, "root isolation recursion limit");
  int v = variations_unit(q);
  if (v == 0) return;
  Rational width = scale * pow2(-k);
  Rational lo = Rational(c) * width;
  if (v == 1) {
    out.push_back(RawRoot{false, lo, lo + width});
    return;
  }
  const std::size_t n = q.size() - 1;
  // Left half: 2^n q(x/2).
  std::vector<Integer> left(q.size());
  for (std::size_t i = 0; i <= n; ++i) {
    Integer t;
    mpz_mul_2exp(t.get_mpz_t(), q[i].get_mpz_t(), static_cast<mp_bitcnt_t>(n - i));
    left[i] = t;
  }
  std::vector<Integer> right = left;
  taylor_shift_one(right);
  Integer c2 = 2 * c;
  bool mid_root = right[0] == 0;
  if (mid_root) {
    out.push_back(RawRoot{true, lo + width / 2, lo + width / 2});
    // Deflate the shared root at x = 0 of `right` / x = 1 of `left`.
    right.erase(right.begin());
    std::vector<Integer> rl(left.size() - 1);
    // Synthetic division of left by (x - 1).
    Integer carry = 0;
    for (std::size_t i = left.size(); i-- > 1;) {
      carry += left[i];
      rl[i - 1] = carry;
    }
    left = std::move(rl);
  }
  vca(std::move(left), c2, k + 1, scale, out, depth + 1);
  vca(std::move(right), c2 + 1, k + 1, scale, out, depth + 1);
}

// Roots of p in (0, infinity); p squarefree with p(0) != 0.
std::vector<RawRoot> positive_roots(const UPoly& p) {
  std::vector<RawRoot> out;
  if (p.degree() < 1) return out;
  const auto& c = p.coeffs();
  std::vector<Integer> cc(c.begin(), c.end());
  if (sign_variations(cc) == 0) return out;
  // Cauchy bound 1 + max|a_i / a_n| rounded up to a power of two.
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r(abs(c[i]), abs(p.leading()));
    r.canonicalize();
    if (r > m) m = r;
  }
  Rational bound = m + 1;
  long k = 0;
  while (pow2(k) < bound) ++k;
  Rational scale = pow2(k);
  // q(x) = p(2^k x)
  std::vector<Integer> q(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    Integer t;
    mpz_mul_2exp(t.get_mpz_t(), c[i].get_mpz_t(), static_cast<mp_bitcnt_t>(k * static_cast<long>(i)));
    q[i] = t;
  }
  vca(std::move(q), Integer(0), 0, scale, out, 0);
  std::sort(out.begin(), out.end(), [](const RawRoot& a, const RawRoot& b) { return a.lo < b.lo; });
  return out;
}

}  // namespace

namespace {

std::optional<Rational> rational_root_in(const UPoly& p, Rational lo, Rational hi) {
  Integer lc = abs(p.leading());
  Rational width(1, lc * lc);
  width.canonicalize();
  int slo = p.sign_at(lo);
  while (hi - lo >= width) {
    Rational mid = (lo + hi) / 2;
    int sm = p.sign_at(mid);
    if (sm == 0) return mid;
    if (sm == slo) lo = mid;
    else hi = mid;
  }
  Rational q = simplest_between(lo, hi);
  if (p.sign_at(q) == 0) return q;
  return std::nullopt;
}

}  // namespace

std::vector<AlgebraicNumber> isolate_real_roots(const UPoly& p0) {
  if (p0.is_zero()) fail(ErrorKind::UndefinedInput, "root isolation of the zero polynomial");
  UPoly p = squarefree_part(p0);
  std::vector<AlgebraicNumber> roots;
  if (p.degree() < 1) return roots;
  if (p.coeffs()[0] == 0) {
    roots.emplace_back(Rational(0));
    p = UPoly(std::vector<Integer>(p.coeffs().begin() + 1, p.coeffs().end()));
  }
  std::vector<RawRoot> raw;
  while (true) {
    if (p.degree() == 1) {
      Rational r(-p.coeffs()[0], p.coeffs()[1]);
      r.canonicalize();
      roots.emplace_back(r);
      break;
    }
    if (p.degree() < 1) break;
    raw.clear();
    for (const auto& r : positive_roots(p.reflect())) raw.push_back(RawRoot{r.exact, -r.hi, -r.lo});
    for (const auto& r : positive_roots(p)) raw.push_back(r);
    // Rational roots hit by bisection midpoints are divided out and the rest re-isolated,
    // so that every isolating interval has non-root endpoints.
    bool deflated = false;
    for (const auto& r : raw) {
      if (!r.exact) continue;
      roots.emplace_back(r.lo);
      p = exact_quotient(p, UPoly({-r.lo.get_num(), r.lo.get_den()}));
      deflated = true;
    }
    if (deflated) continue;
    // Rational roots not hit exactly: with denominators dividing lc, such a root is the
    // simplest rational of an interval narrower than 1/lc^2.
    if (mpz_sizeinbase(p.leading().get_mpz_t(), 2) <= 128) {
      for (const auto& r : raw) {
        if (auto q = rational_root_in(p, r.lo, r.hi)) {
          roots.emplace_back(*q);
          p = exact_quotient(p, UPoly({-q->get_num(), q->get_den()}));
          deflated = true;
        }
      }
      if (deflated) continue;
    }
    auto shared = std::make_shared<const UPoly>(p.primitive());
    std::vector<Rational> rational;
    for (const auto& a : roots) rational.push_back(a.value());
    for (const auto& r : raw) {
      AlgebraicNumber a(shared, r.lo, r.hi);
      // The cofactor's intervals may still cover roots divided out earlier.
      for (const auto& q : rational)
        while (a.lower() <= q && q <= a.upper()) a.refine();
      roots.push_back(std::move(a));
    }
    break;
  }
  std::sort(roots.begin(), roots.end(), [](const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) < 0; });
  return roots;
}

std::vector<AlgebraicNumber> isolate_real_roots(const Polynomial& p, Var v) {
  return isolate_real_roots(UPoly::from_polynomial(p, v));
}

unsigned descartes_bound(const UPoly& p, const Rational& lo, const Rational& hi) {
  // (1 + x)^n p((lo + hi x) / (1 + x)) expanded with rational arithmetic.
  const int n = p.degree();
  if (n < 1) return 0;
  // p(lo + (hi - lo) y), then reverse and shift.
  Rational w = hi - lo;
  std::vector<Rational> c(p.coeffs().begin(), p.coeffs().end());
  // Taylor shift by lo.
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) c[j] += lo * c[j + 1];
  Rational wp = 1;
  for (int i = 0; i <= n; ++i) {
    c[i] *= wp;
    wp *= w;
  }
  Integer lcm = 1;
  for (const auto& x : c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> z;
  z.reserve(c.size());
  for (const auto& x : c) z.push_back(Rational(x * Rational(lcm)).get_num());
  return static_cast<unsigned>(variations_unit(z));
}

// ---------------------------------------------------------------- AlgebraicNumber

AlgebraicNumber::AlgebraicNumber(const Rational& q) : rational_(true), value_(q) { value_.canonicalize(); }

AlgebraicNumber::AlgebraicNumber(std::shared_ptr<const UPoly> defining, const Rational& lo, const Rational& hi)
    : rational_(false), defining_(std::move(defining)), lo_(lo), hi_(hi) {
  if (!defining_ || defining_->degree() < 1) fail(ErrorKind::Precondition, "algebraic number needs a non-constant defining polynomial");
  if (!(lo_ < hi_)) fail(ErrorKind::Precondition, "empty isolating interval");
  int slo = defining_->sign_at(lo_);
  int shi = defining_->sign_at(hi_);
  if (slo == 0 || shi == 0 || slo == shi) fail(ErrorKind::Precondition, "interval does not isolate a simple root");
  sign_lo_ = slo;
  if (defining_->degree() == 1) {
    rational_ = true;
    value_ = Rational(-defining_->coeffs()[0], defining_->coeffs()[1]);
    value_.canonicalize();
  }
}

const Rational& AlgebraicNumber::value() const {
  if (!rational_) fail(ErrorKind::Precondition, "value() of an irrational algebraic number");
  return value_;
}

const UPoly& AlgebraicNumber::defining() const { return *defining_ptr(); }

std::shared_ptr<const UPoly> AlgebraicNumber::defining_ptr() const {
  if (!rational_) return defining_;
  if (!linear_) linear_ = std::make_shared<const UPoly>(std::vector<Integer>{-value_.get_num(), value_.get_den()});
  return linear_;
}

void AlgebraicNumber::refine() const {
  if (rational_) return;
  Rational mid = (lo_ + hi_) / 2;
  int s = defining_->sign_at(mid);
  if (s == 0) {
    rational_ = true;
    value_ = mid;
    return;
  }
  if (s == sign_lo_) lo_ = mid;
  else hi_ = mid;
}

void AlgebraicNumber::refine_to(const Rational& width) const {
  int guard = 0;
  while (!rational_ && hi_ - lo_ > width) {
    refine();
    if (++guard > kRefineCap) fail(ErrorKind::Internal, "interval refinement cap reached");
  }
}

double AlgebraicNumber::approx() const {
  if (rational_) return value_.get_d();
  refine_to(pow2(-60));
  if (rational_) return value_.get_d();
  return Rational((lo_ + hi_) / 2).get_d();
}

std::string AlgebraicNumber::to_string(const std::string& var) const {
  if (rational_) return value_.get_str();
  return "root(" + cad::to_string(*defining_, var) + ", " + lo_.get_str() + ", " + hi_.get_str() + ")";
}

// ---------------------------------------------------------------- compare

namespace {

std::strong_ordering compare_rational(const Rational& q, const AlgebraicNumber& b) {
  if (b.is_rational()) return compare3(q, b.value());
  if (q <= b.lower()) return std::strong_ordering::less;
  if (q >= b.upper()) return std::strong_ordering::greater;
  const UPoly& m = b.defining();
  int s = m.sign_at(q);
  if (s == 0) return std::strong_ordering::equal;
  // The single sign change of m in (lo, hi) sits on the side of q where the sign differs.
  return s == m.sign_at(b.lower()) ? std::strong_ordering::less : std::strong_ordering::greater;
}

bool has_root_in(const UPoly& g, const AlgebraicNumber& a) {
  // g divides a's defining polynomial, so it has at most one root in a's interval.
  if (a.is_rational()) return g.sign_at(a.value()) == 0;
  return g.sign_at(a.lower()) * g.sign_at(a.upper()) < 0;
}

}  // namespace

std::strong_ordering compare(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_rational()) return compare_rational(a.value(), b);
  if (b.is_rational()) {
    auto c = compare_rational(b.value(), a);
    return 0 <=> c;
  }
  if (a.upper() <= b.lower()) return std::strong_ordering::less;
  if (b.upper() <= a.lower()) return std::strong_ordering::greater;
  UPoly g = a.defining_ptr() == b.defining_ptr() ? a.defining() : gcd(a.defining(), b.defining());
  for (int guard = 0; guard < kRefineCap; ++guard) {
    if (a.is_rational() || b.is_rational()) return compare(a, b);
    if (a.upper() <= b.lower()) return std::strong_ordering::less;
    if (b.upper() <= a.lower()) return std::strong_ordering::greater;
    if (g.degree() >= 1 && has_root_in(g, a) && has_root_in(g, b)) {
      Rational lo = std::min(a.lower(), b.lower());
      Rational hi = std::max(a.upper(), b.upper());
      if (g.sign_at(lo) != 0 && g.sign_at(hi) != 0 && descartes_bound(g, lo, hi) == 1)
        return std::strong_ordering::equal;
    }
    a.refine();
    b.refine();
  }
  fail(ErrorKind::Internal, "algebraic comparison did not terminate");
}

// ---------------------------------------------------------------- evaluation

namespace {

Interval mul(const Interval& a, const Interval& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return Interval{std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

Interval ipow(const Interval& a, std::uint32_t e) {
  if (e == 0) return Interval{1, 1};
  Rational lo = 1, hi = 1;
  Rational l = a.lo, h = a.hi;
  // Exact powers of the endpoints.
  Rational lp = 1, hp = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    lp *= l;
    hp *= h;
  }
  if (e % 2 == 1) return Interval{lp, hp};
  if (l >= 0) return Interval{lp, hp};
  if (h <= 0) return Interval{hp, lp};
  (void)lo;
  (void)hi;
  return Interval{0, std::max(lp, hp)};
}

}  // namespace

Interval evaluate_interval(const Polynomial& p, const SamplePoint& s) {
  const std::size_t n = p.nvars();
  std::vector<Interval> box(n);
  std::vector<std::uint32_t> maxdeg(n, 0);
  for (const auto& t : p.terms())
    for (std::size_t i = 0; i < n; ++i) maxdeg[i] = std::max(maxdeg[i], t.exponents[i]);
  std::vector<std::vector<Interval>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (maxdeg[i] == 0) continue;
    if (i >= s.size()) fail(ErrorKind::DimensionMismatch, "sample point does not cover the polynomial");
    box[i] = Interval{s[i].lower(), s[i].upper()};
    powers[i].resize(maxdeg[i] + 1);
    for (std::uint32_t e = 0; e <= maxdeg[i]; ++e) powers[i][e] = ipow(box[i], e);
  }
  Interval acc{0, 0};
  for (const auto& t : p.terms()) {
    Interval m{t.coef, t.coef};
    for (std::size_t i = 0; i < n; ++i)
      if (t.exponents[i]) m = mul(m, powers[i][t.exponents[i]]);
    acc.lo += m.lo;
    acc.hi += m.hi;
  }
  return acc;
}

namespace {

struct Specialized {
  Polynomial poly;
  std::vector<Var> algebraic;  // irrational coordinates still present
};

Specialized specialize_rational(const Polynomial& p, const SamplePoint& s, std::size_t upto) {
  Specialized out{p, {}};
  for (Var v = 0; v < upto; ++v) {
    if (!p.involves(v)) continue;
    if (v >= s.size()) fail(ErrorKind::DimensionMismatch, "sample point does not cover the polynomial");
    if (s[v].is_rational()) out.poly = out.poly.substitute(v, s[v].value());
    else out.algebraic.push_back(v);
  }
  return out;
}

// Sign of a univariate polynomial (in u) at an irrational algebraic number.
int sign_univariate(const UPoly& q, const AlgebraicNumber& a) {
  if (q.degree() < 1) return q.is_zero() ? 0 : sgn(q.leading());
  if (!a.is_rational()) {
    UPoly g = gcd(q, a.defining());
    if (g.degree() >= 1 && has_root_in(g, a)) return 0;
  }
  for (int guard = 0; guard < kRefineCap; ++guard) {
    if (a.is_rational()) return q.sign_at(a.value());
    int slo = q.sign_at(a.lower());
    if (slo != 0 && descartes_bound(q, a.lower(), a.upper()) == 0) return slo;
    a.refine();
  }
  fail(ErrorKind::Internal, "sign determination did not terminate");
}

// Univariate polynomial in a fresh top variable w vanishing at q(alpha); never zero.
Polynomial value_annihilator(const Polynomial& q, const SamplePoint& s, const std::vector<Var>& alg) {
  const std::size_t n = q.nvars() + 1;
  const Var w = q.nvars();
  std::vector<Var> id(q.nvars());
  for (Var i = 0; i < q.nvars(); ++i) id[i] = i;
  Polynomial f = Polynomial::variable(n, w) - q.remap(id, n);
  for (Var u : alg) {
    if (!f.involves(u)) continue;
    Polynomial m = s[u].defining().to_polynomial(n, u);
    f = resultant(f, m, u);
  }
  return f;
}

int sign_multivariate(const Polynomial& q, const SamplePoint& s, const std::vector<Var>& alg) {
  Rational eps = pow2(-12);
  std::optional<Rational> zero_radius;  // set once the annihilator says 0 is a candidate
  bool exact_done = false;
  for (int round = 0; round < 64; ++round) {
    for (Var u : alg) s[u].refine_to(eps);
    Interval iv = evaluate_interval(q, s);
    if (!iv.contains_zero()) return iv.lo > 0 ? 1 : -1;
    if (zero_radius && -*zero_radius < iv.lo && iv.hi < *zero_radius) return 0;
    if (!exact_done && round >= 1) {
      exact_done = true;
      Polynomial t = value_annihilator(q, s, alg);
      UPoly tu = UPoly::from_polynomial(t, q.nvars());
      std::size_t k = 0;
      while (k < tu.coeffs().size() && tu.coeffs()[k] == 0) ++k;
      if (k > 0) {
        // Strip w^k; nonzero roots of the rest are bounded away from zero.
        std::vector<Integer> rest(tu.coeffs().begin() + static_cast<long>(k), tu.coeffs().end());
        Integer a0 = abs(rest[0]);
        Integer mx = 0;
        for (std::size_t i = 1; i < rest.size(); ++i) mx = std::max(mx, Integer(abs(rest[i])));
        zero_radius = Rational(a0, a0 + mx);
        zero_radius->canonicalize();
        if (-*zero_radius < iv.lo && iv.hi < *zero_radius) return 0;
      }
    }
    eps = eps * eps;
    if (eps < pow2(-2000)) eps = pow2(-2000);
  }
  fail(ErrorKind::Internal, "sign determination did not terminate");
}

}  // namespace

int sign_at(const Polynomial& p, const SamplePoint& s) {
  Specialized sp = specialize_rational(p, s, p.nvars());
  if (sp.poly.is_constant()) return sign(sp.poly.constant_value());
  std::vector<Var> alg;
  for (Var u : sp.algebraic)
    if (sp.poly.involves(u)) alg.push_back(u);
  if (alg.size() == 1) return sign_univariate(UPoly::from_polynomial(sp.poly, alg[0]), s[alg[0]]);
  return sign_multivariate(sp.poly, s, alg);
}

namespace {

// Resultant of f and the defining polynomial of coordinate u, shrinking the
// defining polynomial when it shares a factor with f that the coordinate avoids.
Polynomial eliminate(const Polynomial& f, const AlgebraicNumber& a, Var u, bool first) {
  const std::size_t n = f.nvars();
  UPoly m = a.defining();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Polynomial mp = m.to_polynomial(n, u);
    Polynomial r = resultant(f, mp, u);
    if (!r.is_zero()) return r;
    Polynomial g = gcd(f, mp);
    UPoly gu = UPoly::from_polynomial(g, u);
    if (gu.degree() < 1) fail(ErrorKind::Internal, "degenerate norm computation");
    if (has_root_in(gu, a)) {
      if (first) fail(ErrorKind::WellOriented, "polynomial vanishes identically over the sample");
      fail(ErrorKind::Internal, "degenerate norm from conjugate coordinates");
    }
    m = exact_quotient(m, gu);
  }
  fail(ErrorKind::Internal, "degenerate norm computation");
}

}  // namespace

RootsAbove roots_above(const Polynomial& p, const SamplePoint& s, Var v) {
  if (v >= p.nvars()) fail(ErrorKind::OrderingMismatch, "variable outside ring");
  for (Var u = v + 1; u < p.nvars(); ++u)
    if (p.involves(u)) fail(ErrorKind::Precondition, "roots_above: polynomial involves a variable above the lifting variable");
  if (s.size() < v) fail(ErrorKind::DimensionMismatch, "sample point does not cover the lower variables");
  RootsAbove out;
  Specialized sp = specialize_rational(p, s, v);
  std::vector<Var> alg;
  for (Var u : sp.algebraic)
    if (sp.poly.involves(u)) alg.push_back(u);
  if (alg.empty()) {
    if (sp.poly.is_zero()) {
      out.nullified = true;
      return out;
    }
    if (!sp.poly.involves(v)) return out;
    out.roots = isolate_real_roots(UPoly::from_polynomial(sp.poly, v));
    return out;
  }
  // Drop leading coefficients that vanish at the sample.
  auto coeffs = sp.poly.coefficients(v);
  std::size_t d = coeffs.size();
  while (d > 0 && sign_at(coeffs[d - 1], s) == 0) --d;
  if (d == 0) {
    out.nullified = true;
    return out;
  }
  if (d == 1) return out;
  coeffs.resize(d);
  Polynomial q = Polynomial::from_coefficients(p.nvars(), coeffs, v);
  Polynomial norm = q;
  bool first = true;
  for (Var u : alg) {
    if (!norm.involves(u)) continue;
    norm = eliminate(norm, s[u], u, first);
    first = false;
  }
  if (!norm.involves(v)) fail(ErrorKind::Internal, "norm lost the lifting variable");
  SamplePoint ext(s.begin(), s.begin() + static_cast<long>(v));
  ext.emplace_back();
  for (auto& cand : isolate_real_roots(UPoly::from_polynomial(norm, v))) {
    ext[v] = cand;
    if (sign_at(q, ext) == 0) out.roots.push_back(ext[v]);
  }
  return out;
}

}  // namespace cad
