#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cad/error.hpp"
#include "cad/formula.hpp"
#include "cad/projection.hpp"
#include "oracles.hpp"

using namespace cad;

namespace {

Polynomial P(const char* s, const VarOrder& o) { return parse_polynomial(s, o); }

PolySet set_of(const std::vector<Polynomial>& ps) { return {ps.begin(), ps.end()}; }

PolySet set_of(std::initializer_list<const char*> ss, const VarOrder& o) {
  PolySet out;
  for (auto s : ss) out.insert(normalize(P(s, o)));
  return out;
}

bool subset(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
  auto sb = set_of(b);
  for (const auto& p : a)
    if (!sb.count(p)) return false;
  return true;
}

}  // namespace

TEST_CASE("mccallum projection examples") {
  VarOrder o({"y", "x"});
  Var x = 1;
  CHECK(set_of(mccallum_project({P("x^2 + y^2 - 1", o)}, x)) == set_of({"y^2 - 1"}, o));
  CHECK(set_of(mccallum_project({P("x - y", o)}, x)) == set_of({"y"}, o));
  auto r = set_of(mccallum_project({P("x^2 - y", o), P("x - y", o)}, x));
  CHECK(r.count(normalize(P("y^2 - y", o))));
  // Lower polynomials pass through, contents are kept.
  auto s = set_of(mccallum_project({P("y^2 - 2", o), P("(y - 3)*(x^2 + 1)", o)}, x));
  CHECK(s.count(normalize(P("y^2 - 2", o))));
  CHECK(s.count(normalize(P("y - 3", o))));
}

TEST_CASE("mccallum projection output is the defining sets") {
  // Every output is one of: content, coefficient, discriminant or resultant of basis
  // members; check the resultants and discriminants against the Sylvester oracle.
  std::mt19937 rng(7);
  for (int it = 0; it < 40; ++it) {
    Polynomial a = oracle::random_poly(rng, 2, 3, 5, 4);
    Polynomial b = oracle::random_poly(rng, 2, 3, 5, 4);
    if (a.degree_in(1) == 0 || b.degree_in(1) == 0 || a.is_zero() || b.is_zero()) continue;
    if (!is_primitive(a, 1) || !is_primitive(b, 1)) continue;
    Polynomial sa = squarefree_part(a, 1), sb = squarefree_part(b, 1);
    if (!gcd(sa, sb).is_constant()) continue;
    auto out = set_of(mccallum_project({sa, sb}, 1));
    Polynomial r = resultant(sa, sb, 1);
    if (r.is_constant()) continue;
    // Resultant agrees with the Sylvester determinant at a few points.
    for (int k = -2; k <= 2; ++k) {
      std::vector<Rational> pt{Rational(k), Rational(0)};
      CHECK(r.evaluate(pt) == oracle::sylvester_at(sa, sb, 1, pt));
    }
    CHECK(out.count(normalize(r)));
  }
}

TEST_CASE("reduced projection examples") {
  VarOrder o({"y", "x"});
  Var x = 1;
  CHECK(set_of(reduced_project(P("x^2 + y^2 - 1", o), {P("x - y", o)}, x)) == set_of({"y^2 - 1", "2*y^2 - 1"}, o));
  Polynomial f = P("x^3 - 2*x*y + y^2 - 1", o);
  CHECK(set_of(reduced_project(f, {}, x)) == set_of(mccallum_project({f}, x)));
  std::optional<ErrorKind> kind;
  try {
    reduced_project(P("(y - 1)*x + (y - 1)", o), {P("x", o)}, x);
  } catch (const Error& e) {
    kind = e.kind();
  }
  CHECK(kind == ErrorKind::PrimitivityViolation);
  // The reduction: no resultant between two non-EC polynomials.
  auto red = set_of(reduced_project(P("x^2 + y^2 - 1", o), {P("x - y", o), P("x + y - 3", o)}, x));
  CHECK_FALSE(red.count(normalize(resultant(P("x - y", o), P("x + y - 3", o), x))));
  auto full = set_of(mccallum_project({P("x^2 + y^2 - 1", o), P("x - y", o), P("x + y - 3", o)}, x));
  for (const auto& p : red) CHECK(full.count(p));
}

TEST_CASE("EC propagation") {
  VarOrder o({"x", "y", "z"});
  Var z = 2;
  CHECK(set_of(propagate_ecs({P("z - x*y", o), P("z - x - y", o)}, z, PropagationMode::Resultant)) ==
        set_of({"x*y - x - y"}, o));
  CHECK(propagate_ecs({P("z^2 - x", o)}, z, PropagationMode::Resultant).empty());
  CHECK(propagate_ecs({P("z^2 - x", o)}, z, PropagationMode::Groebner).empty());
  CHECK(set_of(propagate_ecs({P("z^2 - x", o), P("z^2 - y", o)}, z, PropagationMode::Resultant)) ==
        set_of({"x - y"}, o));
  CHECK(set_of(propagate_ecs({P("z^2 - x", o), P("z^2 - y", o)}, z, PropagationMode::Groebner)) ==
        set_of({"x - y"}, o));
}

TEST_CASE("plan: circle and line with auto ECs") {
  VarOrder o({"y", "x"});
  auto f = Formula::parse("x^2 + y^2 - 1 = 0 and x - y = 0", o);
  auto plan = plan_projection(f, o, PlanOptions{EcPolicy::Auto});
  REQUIRE(plan.levels.size() == 2);
  REQUIRE(plan.levels[1].ec);
  CHECK(plan.levels[1].ec->poly == normalize(P("x - y", o)));
  REQUIRE(plan.levels[0].ec);
  CHECK(plan.levels[0].ec->poly == normalize(P("2*y^2 - 1", o)));
  CHECK(plan.levels[0].ec->origin == EcOrigin::Resultant);
  CHECK(plan.ell == 2);
}

TEST_CASE("plan: no ECs is pure McCallum") {
  VarOrder o({"y", "x"});
  auto plan = plan_projection(Formula::parse("x^2 + y^2 - 1 > 0", o), o, PlanOptions{EcPolicy::Auto});
  CHECK(plan.ell == 0);
  for (const auto& l : plan.levels) {
    CHECK_FALSE(l.ec);
    CHECK(l.lifting_polys == l.projection_polys);
  }
  CHECK(set_of(plan.levels[0].lifting_polys) == set_of({"y^2 - 1"}, o));
}

TEST_CASE("plan invariants and savings") {
  const char* fs[] = {"x^2 + y^2 - 1 = 0 and x > 0", "x*y - 1 = 0 and x + y < 3", "x^2 + y^2 + z^2 - 1 = 0 and z - x*y = 0",
                      "z^2 - x = 0 and z^2 - y = 0 and x + y > 1"};
  for (auto s : fs) {
    auto f = Formula::parse(s);
    auto ec = plan_projection(f, f.order(), PlanOptions{EcPolicy::Auto});
    auto full = plan_projection(f, f.order(), PlanOptions{EcPolicy::None});
    for (Var v = 0; v < f.order().size(); ++v) {
      const auto& l = ec.levels[v];
      CHECK(subset(l.lifting_polys, l.projection_polys));
      if (l.ec) {
        CHECK(l.lifting_polys.size() == 1);
        CHECK(l.lifting_polys[0] == l.ec->poly);
        CHECK(is_primitive(l.ec->poly, v));
      }
      for (const auto& p : l.projection_polys) CHECK(*p.main_var() == v);
    }
    std::size_t a = 0, b = 0;
    for (Var v = 0; v < f.order().size(); ++v) {
      a += ec.levels[v].lifting_polys.size();
      b += full.levels[v].lifting_polys.size();
    }
    CHECK(a <= b);
  }
}

TEST_CASE("plan: designated ECs") {
  VarOrder o({"y", "x"});
  auto f = Formula::parse("x^2 + y^2 - 1 = 0 and x > 0", o);
  PlanOptions opt{EcPolicy::Designated};
  opt.designated = {P("x^2 + y^2 - 1", o)};
  auto plan = plan_projection(f, o, opt);
  REQUIRE(plan.levels[1].ec);
  CHECK(plan.ell == 1);
  CHECK(plan.levels[1].lifting_polys.size() == 1);

  opt.designated = {P("(y - 1)*(x - 1)", o)};
  std::optional<ErrorKind> kind;
  try {
    plan_projection(f, o, opt);
  } catch (const Error& e) {
    kind = e.kind();
  }
  CHECK(kind == ErrorKind::PrimitivityViolation);

  opt.designated = {P("x^2 + y^2 - 1", o), P("x - y", o)};
  kind.reset();
  try {
    plan_projection(f, o, opt);
  } catch (const Error& e) {
    kind = e.kind();
  }
  CHECK(kind == ErrorKind::Precondition);
}

TEST_CASE("plan: imprimitive auto candidates fall back") {
  VarOrder o({"y", "x"});
  auto plan = plan_projection(Formula::parse("(y - 1)*(x - 1) = 0 and x > y", o), o, PlanOptions{EcPolicy::Auto});
  CHECK(plan.levels[1].fallback);
  CHECK_FALSE(plan.levels[1].ec);
  CHECK(plan.ell == 0);
  CHECK_FALSE(plan.levels[1].notes.empty());
}

TEST_CASE("plan: projection cap") {
  auto f = Formula::parse("x^2 + y^2 - 1 = 0 and x*y > 1 and x - y < 2");
  PlanOptions opt;
  opt.projection_cap = 2;
  std::optional<ErrorKind> kind;
  try {
    plan_projection(f, f.order(), opt);
  } catch (const Error& e) {
    kind = e.kind();
  }
  CHECK(kind == ErrorKind::CapExceeded);
}

TEST_CASE("plan json") {
  auto f = Formula::parse("x^2 + y^2 - 1 = 0 and x > 0", VarOrder({"y", "x"}));
  auto j = plan_to_json(plan_projection(f, f.order(), PlanOptions{EcPolicy::Auto}));
  CHECK(j.find("\"ell\": 1") != std::string::npos);
}
