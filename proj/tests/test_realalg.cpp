#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cad/error.hpp"
#include "cad/realalg.hpp"
#include "oracles.hpp"

using namespace cad;

namespace {

Polynomial P(const char* s, const VarOrder& o) { return parse_polynomial(s, o); }
const VarOrder X({"x"});

AlgebraicNumber root_of(const char* s, int which) {
  return isolate_real_roots(P(s, X), 0).at(static_cast<std::size_t>(which));
}

}  // namespace

TEST_CASE("isolation examples") {
  auto r = isolate_real_roots(P("x^2 - 2", X), 0);
  REQUIRE(r.size() == 2);
  r[0].refine_to(Rational(1));
  r[1].refine_to(Rational(1));
  CHECK(r[0].lower() >= -2);
  CHECK(r[0].upper() <= -1);
  CHECK(r[1].lower() >= 1);
  CHECK(r[1].upper() <= 2);
  CHECK(isolate_real_roots(P("x^2 + 1", X), 0).empty());
  auto c = isolate_real_roots(P("x^3 - x", X), 0);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == AlgebraicNumber(Rational(-1)));
  CHECK(c[1] == AlgebraicNumber(Rational(0)));
  CHECK(c[2] == AlgebraicNumber(Rational(1)));
  CHECK_THROWS_AS(isolate_real_roots(Polynomial(1), 0), Error);
  // After dividing out 0, 1 and 2, the sextic's root near 1.2 must not keep an interval around 1.
  auto d = isolate_real_roots(P("x*(x - 1)*(x - 2)*(14*x^6 - 7*x^5 + 19*x^4 - 13*x^3 - 17*x^2 + 11*x - 14)", X), 0);
  REQUIRE(d.size() == 5);
  for (const auto& a : d)
    if (!a.is_rational()) CHECK(!(a.lower() <= 1 && 1 <= a.upper()));
}

TEST_CASE("isolation agrees with Sturm counts") {
  std::mt19937 rng(17);
  for (int i = 0; i < 400; ++i) {
    auto p = oracle::random_poly(rng, 1, 8, 9, 5);
    if (p.degree_in(0) < 1) continue;
    if (i % 3 == 0) p *= oracle::random_poly(rng, 1, 2, 3, 2);  // repeated / rational roots
    if (p.degree_in(0) < 1) continue;
    auto dense = oracle::dense(p, 0);
    auto roots = isolate_real_roots(p, 0);
    REQUIRE(static_cast<int>(roots.size()) == oracle::sturm_count_all(dense));
    for (std::size_t k = 0; k < roots.size(); ++k) {
      const auto& a = roots[k];
      if (!a.is_rational()) {
        std::vector<Rational> m(a.defining().coeffs().begin(), a.defining().coeffs().end());
        CHECK(oracle::sturm_count(m, a.lower(), a.upper()) == 1);
        CHECK(oracle::eval(m, a.upper()) != 0);
        // Isolating for the input too, not only for the defining factor.
        CHECK(oracle::sturm_count(oracle::squarefree(dense), a.lower(), a.upper()) == 1);
        CHECK(p.evaluate({a.upper()}) != 0);
      } else {
        CHECK(p.evaluate({a.value()}) == 0);
      }
      CHECK(sign_at(p, SamplePoint{a}) == 0);
      if (k > 0) CHECK(compare(roots[k - 1], a) < 0);
    }
  }
}

TEST_CASE("compare") {
  auto s2 = root_of("x^2 - 2", 1);
  CHECK(compare(s2, AlgebraicNumber(Rational(3, 2))) < 0);
  CHECK(compare(s2, AlgebraicNumber(Rational(7, 5))) > 0);
  CHECK(compare(s2, s2) == 0);
  CHECK(compare(s2, root_of("x^2 - 2", 0)) > 0);
  // Same number, different defining polynomials.
  auto t = root_of("(x^2 - 2)*(x^2 - 3)", 2);
  CHECK(compare(s2, t) == 0);
  auto u = root_of("x^2 - 3", 1);
  CHECK(compare(s2, u) < 0);
  // Refinement never changes a decided comparison.
  for (int i = 0; i < 20; ++i) {
    s2.refine();
    CHECK(compare(s2, u) < 0);
  }
  CHECK(s2.to_string().rfind("root(x^2 - 2, ", 0) == 0);
}

TEST_CASE("sign_at") {
  VarOrder o({"y", "x"});
  auto h = root_of("2*x^2 - 1", 1);
  CHECK(sign_at(P("x^2 + y^2 - 1", o), SamplePoint{h, h}) == 0);
  CHECK(sign_at(P("x^2 + y^2 - 1", o), SamplePoint{h, root_of("x^2 - 2", 1)}) == 1);
  CHECK(sign_at(P("x", X), SamplePoint{AlgebraicNumber(Rational(0))}) == 0);
  CHECK(sign_at(P("x*y - 1", o), SamplePoint{AlgebraicNumber(Rational(2)), AlgebraicNumber(Rational(3))}) == 1);
  CHECK_THROWS_AS(sign_at(P("x*y", o), SamplePoint{AlgebraicNumber(Rational(2))}), Error);
  // sqrt2 * sqrt3 - sqrt6 = 0 with three different algebraic coordinates.
  VarOrder o3({"a", "b", "c"});
  SamplePoint s{root_of("x^2 - 2", 1), root_of("x^2 - 3", 1), root_of("x^2 - 6", 1)};
  CHECK(sign_at(P("a*b - c", o3), s) == 0);
  CHECK(sign_at(P("a*b - c - 1/1000000", o3), s) == -1);
  CHECK(sign_at(P("a + b - c", o3), s) == 1);
}

TEST_CASE("sign_at agrees with interval evaluation") {
  std::mt19937 rng(23);
  VarOrder o({"y", "x"});
  std::vector<AlgebraicNumber> pool{root_of("x^2 - 2", 1), root_of("x^3 - 3*x + 1", 0), root_of("x^2 - 5", 0),
                                    AlgebraicNumber(Rational(1, 3)), root_of("x^3 - 2", 0)};
  for (int i = 0; i < 1000; ++i) {
    auto p = oracle::random_poly(rng, 2, 3, 9, 4);
    SamplePoint s{pool[rng() % pool.size()], pool[rng() % pool.size()]};
    for (auto& a : s) a.refine_to(Rational(1, 1 << 30));
    int sg = sign_at(p, s);
    Interval iv = evaluate_interval(p, s);
    if (!iv.contains_zero()) REQUIRE(sg == (iv.lo > 0 ? 1 : -1));
  }
}

TEST_CASE("roots_above") {
  VarOrder o({"y", "x"});
  auto c = P("x^2 + y^2 - 1", o);
  auto r = roots_above(c, SamplePoint{AlgebraicNumber(Rational(0))}, 1);
  REQUIRE(r.roots.size() == 2);
  CHECK(r.roots[0] == AlgebraicNumber(Rational(-1)));
  CHECK(r.roots[1] == AlgebraicNumber(Rational(1)));
  CHECK(roots_above(c, SamplePoint{AlgebraicNumber(Rational(2))}, 1).roots.empty());
  CHECK(roots_above(P("y*x - y", o), SamplePoint{AlgebraicNumber(Rational(0))}, 1).nullified);

  // Over y = sqrt(2)/2 the circle has the two roots +-sqrt(2)/2.
  auto h = root_of("2*x^2 - 1", 1);
  auto ra = roots_above(c, SamplePoint{h}, 1);
  REQUIRE(ra.roots.size() == 2);
  CHECK(ra.roots[1] == h);
  // Tangency: over y = 1 a double root at 0.
  auto t = roots_above(c, SamplePoint{AlgebraicNumber(Rational(1))}, 1);
  REQUIRE(t.roots.size() == 1);
  CHECK(t.roots[0] == AlgebraicNumber(Rational(0)));
  // Leading coefficient vanishing at an algebraic point.
  auto l = roots_above(P("(y^2 - 2)*x^2 + x - 1", o), SamplePoint{root_of("x^2 - 2", 1)}, 1);
  REQUIRE(l.roots.size() == 1);
  CHECK(l.roots[0] == AlgebraicNumber(Rational(1)));
  CHECK(roots_above(P("(y^2 - 2)*x", o), SamplePoint{root_of("x^2 - 2", 1)}, 1).nullified);
}

TEST_CASE("roots_above agrees with rational specialization") {
  std::mt19937 rng(29);
  VarOrder o({"y", "x"});
  for (int i = 0; i < 200; ++i) {
    auto p = oracle::random_poly(rng, 2, 4, 9, 5);
    if (p.degree_in(1) < 1) continue;
    Rational y(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1);
    y.canonicalize();
    auto ra = roots_above(p, SamplePoint{AlgebraicNumber(y)}, 1);
    auto sp = p.substitute(0, y);
    if (sp.is_zero()) {
      CHECK(ra.nullified);
      continue;
    }
    if (!sp.involves(1)) {
      CHECK(ra.roots.empty());
      continue;
    }
    auto direct = isolate_real_roots(sp, 1);
    REQUIRE(direct.size() == ra.roots.size());
    for (std::size_t k = 0; k < direct.size(); ++k) CHECK(direct[k] == ra.roots[k]);
  }
}
