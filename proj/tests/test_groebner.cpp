#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cad/error.hpp"
#include "cad/groebner.hpp"
#include "oracles.hpp"

using namespace cad;

namespace {

const MonomialOrder kLex{MonomialOrderKind::Lex};
const MonomialOrder kDrl{MonomialOrderKind::DegRevLex};

Polynomial P(const char* s, const VarOrder& o) { return parse_polynomial(s, o); }

std::vector<Polynomial> Ps(std::initializer_list<const char*> ss, const VarOrder& o) {
  std::vector<Polynomial> out;
  for (auto s : ss) out.push_back(P(s, o));
  return out;
}

void check_groebner(const IdealBasis& b) {
  for (std::size_t i = 0; i < b.gens.size(); ++i)
    for (std::size_t j = i + 1; j < b.gens.size(); ++j)
      REQUIRE(normal_form(s_polynomial(b.gens[i], b.gens[j], b.order), b).is_zero());
  // Reduced: leading coefficient 1 and no term divisible by another generator's leading monomial.
  for (std::size_t i = 0; i < b.gens.size(); ++i) {
    CHECK(leading_term(b.gens[i], b.order).coef == 1);
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < b.gens.size(); ++j)
      if (j != i) others.push_back(b.gens[j]);
    IdealBasis ob{b.nvars, others, b.order, false};
    CHECK(normal_form(b.gens[i], ob) == b.gens[i]);
  }
}

}  // namespace

TEST_CASE("monomial orders") {
  // Order (y, x): x > y.
  Exponents x{0, 1}, y{1, 0}, y2{2, 0};
  CHECK(kLex.greater(x, y2));
  CHECK(kDrl.greater(y2, x));
  // On (z, y, x): y^2 > x*z under degrevlex, x*z > y^2 under lex.
  Exponents xz{1, 0, 1}, yy{0, 2, 0};
  CHECK(kDrl.greater(yy, xz));
  CHECK(kLex.greater(xz, yy));
}

TEST_CASE("normal form") {
  VarOrder o({"y", "x"});
  IdealBasis b{2, Ps({"x - y^2"}, o), kLex, true};
  CHECK(normal_form(P("x^2", o), b) == P("y^4", o));
  CHECK(normal_form(P("x - y^2", o), b).is_zero());
  IdealBasis c{2, Ps({"x", "y"}, o), kLex, true};
  CHECK(normal_form(P("1", o), c) == P("1", o));
}

TEST_CASE("buchberger examples") {
  VarOrder o({"y", "x"});
  auto g = buchberger(Ps({"x^2 - y", "y^2 - x"}, o), 2, kLex);
  CHECK(g.gens == Ps({"x - y^2", "y^4 - y"}, o));
  check_groebner(g);
  CHECK(buchberger(Ps({"x"}, o), 2, kDrl).gens == Ps({"x"}, o));
  CHECK(buchberger(Ps({"x + y", "x - y"}, o), 2, kLex).gens == Ps({"x", "y"}, o));
  CHECK(buchberger(Ps({"x*y - 1", "x"}, o), 2, kLex).gens == Ps({"1"}, o));
}

TEST_CASE("dimension") {
  VarOrder o({"y", "x"});
  CHECK(dimension(buchberger(Ps({"x^2 - y", "y^2 - x"}, o), 2, kLex)) == 0);
  VarOrder o3({"a", "b", "c"});
  CHECK(dimension(buchberger({}, 3, kLex)) == 3);
  CHECK(dimension(buchberger(Ps({"x"}, o), 2, kLex)) == 1);
  CHECK(dimension(buchberger(Ps({"1"}, o), 2, kLex)) == -1);
  IdealBasis raw{2, Ps({"x"}, o), kLex, false};
  CHECK_THROWS_AS(dimension(raw), Error);
}

TEST_CASE("elimination ideal") {
  VarOrder o({"y", "x", "z"});
  auto g = buchberger(Ps({"z^2 - x", "z^2 - y"}, o), 3, kLex);
  CHECK(elimination_ideal(g, 2) == Ps({"x - y"}, o));
  VarOrder u({"x"});
  CHECK(elimination_ideal(buchberger(Ps({"x - 1"}, u), 1, kLex), 0).empty());
  auto h = buchberger(Ps({"z - x*y", "z - x - y"}, o), 3, kLex);
  CHECK(elimination_ideal(h, 2) == Ps({"x*y - x - y"}, o));
  CHECK_THROWS_AS(elimination_ideal(buchberger(Ps({"x"}, o), 3, kDrl), 1), Error);
}

TEST_CASE("random ideals: S-pairs, membership, dimension across orders") {
  std::mt19937 rng(31);
  for (int i = 0; i < 40; ++i) {
    std::size_t n = 2 + rng() % 2;
    std::vector<Polynomial> gens;
    for (int k = 0; k < 2 + static_cast<int>(rng() % 2); ++k) gens.push_back(oracle::random_poly(rng, n, 2, 3, 3));
    auto lex = buchberger(gens, n, kLex);
    auto drl = buchberger(gens, n, kDrl);
    check_groebner(lex);
    check_groebner(drl);
    CHECK(dimension(lex) == dimension(drl));
    auto p = oracle::random_poly(rng, n, 2, 5, 3);
    for (const auto& g : gens) {
      CHECK(normal_form(p * g, lex).is_zero());
      CHECK(normal_form(p * g, drl).is_zero());
    }
  }
}

TEST_CASE("elimination generators vanish on common zeros") {
  VarOrder o({"y", "x", "z"});
  // Common rational zeros are planted: (x, y, z) = (1, 2, 3) and (0, 0, 0).
  auto g = buchberger(Ps({"z*x - 3*x", "x*y - 2*x + z^2 - 3*z", "y^2 - 2*y"}, o), 3, kLex);
  check_groebner(g);
  for (std::size_t keep = 0; keep <= 3; ++keep)
    for (const auto& e : elimination_ideal(g, keep)) {
      CHECK(e.evaluate({Rational(2), Rational(1), Rational(3)}) == 0);
      CHECK(e.evaluate({Rational(0), Rational(0), Rational(0)}) == 0);
    }
}

TEST_CASE("elimination has lower degree than the resultant") {
  VarOrder o({"y", "x", "z"});
  for (unsigned j = 1; j <= 3; ++j) {
    Polynomial zz = Polynomial::variable(3, 2, 1u << j);
    Polynomial a = zz - P("x", o), b = zz - P("y", o);
    auto e = elimination_ideal(buchberger({a, b}, 3, kLex), 2);
    REQUIRE(e.size() == 1);
    auto r = resultant(a, b, 2);
    CHECK(e[0].total_degree() < r.total_degree());
  }
}
