#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cad/error.hpp"
#include "cad/formula.hpp"
#include "cad/lifting.hpp"
#include "cad_oracle.hpp"

using namespace cad;

namespace {

Polynomial P(const char* s, const VarOrder& o) { return parse_polynomial(s, o); }

const VarOrder kYX({"y", "x"});

std::vector<std::string> coords(const std::vector<Cell>& stack) {
  std::vector<std::string> out;
  for (const auto& c : stack)
    if (c.kind == CellKind::Section) out.push_back(c.coord.to_string());
  return out;
}

// Stack shape: alternating kinds, increasing coordinates, sectors strictly between sections.
void check_stack(const std::vector<Cell>& stack) {
  REQUIRE(!stack.empty());
  if (stack.size() == 1) {
    CHECK(stack[0].kind == CellKind::Sector);
    return;
  }
  REQUIRE(stack.size() % 2 == 1);
  for (std::size_t i = 0; i < stack.size(); ++i) {
    CHECK(stack[i].index == i + 1);
    CHECK((stack[i].kind == CellKind::Section) == (i % 2 == 1));
    if (stack[i].kind == CellKind::Sector) CHECK(stack[i].coord.is_rational());
    if (i > 0) CHECK(compare(stack[i - 1].coord, stack[i].coord) < 0);
  }
}

void check_tree(const Cell& c, std::size_t level, std::size_t depth) {
  if (level == depth) return;
  check_stack(c.children);
  for (const auto& ch : c.children) check_tree(ch, level + 1, depth);
}

// Truth invariance by random points; sign invariance as well when `signs` is set.
void sampling_oracle(const CadTree& t, const Formula& f, unsigned seed, bool signs,
                     const std::vector<std::vector<Rational>>& points = {}) {
  std::mt19937 rng(seed);
  auto polys = f.polynomials();
  auto check_point = [&](const std::vector<Rational>& pt) {
    std::vector<unsigned> idx;
    const Cell& leaf = oracle::locate_leaf(t, pt, &idx);
    REQUIRE(leaf.truth.has_value());
    CHECK(*leaf.truth == oracle::eval_formula(f.root(), pt));
    auto lib = locate(t, pt);
    INFO(f.to_string());
    INFO(oracle::show(pt));
    CHECK(oracle::show(lib) == oracle::show(idx));
    if (!signs) return;
    SamplePoint s;
    const Cell* c = &t.root;
    for (unsigned i : idx) {
      c = &c->children[i - 1];
      s.push_back(c->coord);
    }
    for (const auto& p : polys) CHECK(sign_at(p, s) == oracle::sign_rational(p, pt));
  };
  for (int i = 0; i < 500; ++i) check_point(oracle::random_point(rng, t));
  for (const auto& pt : points) check_point(pt);
}

std::vector<Rational> Q(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (auto x : xs) {
    Rational q(x);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

}  // namespace

TEST_CASE("base phase") {
  VarOrder o({"y"});
  auto s = base_phase({P("y^2 - 1", o)});
  CHECK(s.size() == 5);
  CHECK(coords(s) == std::vector<std::string>{"-1", "1"});
  check_stack(s);
  CHECK(base_phase({}).size() == 1);
  auto t = base_phase({P("y", o), P("y - 1", o)});
  CHECK(t.size() == 5);
  CHECK(coords(t) == std::vector<std::string>{"0", "1"});
  // Shared roots merge.
  auto u = base_phase({P("y^2 - 1", o), P("y - 1", o)});
  CHECK(u.size() == 5);
  CHECK(u[3].vanishing.size() == 2);
}

TEST_CASE("lift stack") {
  Var x = 1;
  std::vector<Polynomial> circle{P("x^2 + y^2 - 1", kYX)};
  auto a = lift_stack({AlgebraicNumber(Rational(0))}, true, false, circle, false, x);
  CHECK(a.size() == 5);
  CHECK(coords(a) == std::vector<std::string>{"-1", "1"});
  auto b = lift_stack({AlgebraicNumber(Rational(2))}, true, false, circle, true, x);
  CHECK(b.size() == 1);
  CHECK(b[0].cylinder);
  auto c = lift_stack({AlgebraicNumber(Rational(1))}, false, false, circle, true, x);
  CHECK(c.size() == 3);
  CHECK(coords(c) == std::vector<std::string>{"0"});
  // Nullification is a well-orientedness error.
  std::optional<ErrorKind> kind;
  try {
    lift_stack({AlgebraicNumber(Rational(1))}, false, false, {P("(y - 1)*x + y^2 - 1", kYX)}, false, x);
  } catch (const Error& e) {
    kind = e.kind();
  }
  CHECK(kind == ErrorKind::WellOriented);
}

TEST_CASE("cell counts of the worked examples") {
  auto count = [](const char* s, PlanOptions opt) {
    auto f = Formula::parse(s, kYX);
    auto t = build_cad(f, kYX, opt);
    check_tree(t.root, 0, t.depth());
    sampling_oracle(t, f, 11, opt.policy == EcPolicy::None, {Q({"4/5", "3/5"}), Q({"3/5", "-4/5"}), Q({"1", "0"})});
    return cell_count(t);
  };
  auto c1 = count("x^2 + y^2 - 1 = 0", {});
  CHECK(c1.total == 13);
  CHECK(c1.per_level[0] == 5);
  CHECK(c1.sections + c1.sectors == 13);
  CHECK(count("x^2 + y^2 - 1 = 0 and x > 0", {}).total == 19);
  PlanOptions des{EcPolicy::Designated};
  des.designated = {P("x^2 + y^2 - 1", kYX)};
  CHECK(count("x^2 + y^2 - 1 = 0 and x > 0", des).total == 13);
  auto c4 = count("x^2 + y^2 - 1 = 0 and x - y = 0", PlanOptions{EcPolicy::Auto});
  CHECK(c4.total == 9);
  CHECK(c4.per_level[0] == 5);
}

TEST_CASE("empty input") {
  auto plan = plan_projection(std::vector<Polynomial>{}, {}, VarOrder({"x"}), PlanOptions{});
  CHECK(cell_count(build_cad(plan)).total == 1);
  auto plan2 = plan_projection(std::vector<Polynomial>{}, {}, kYX, PlanOptions{});
  CHECK(cell_count(build_cad(plan2)).total == 1);
}

TEST_CASE("truth assignment") {
  auto f = Formula::parse("x^2 + y^2 - 1 = 0", kYX);
  auto t = build_cad(f, kYX, PlanOptions{});
  // Independent count: leaves whose sample lies on the circle.
  std::size_t on = 0, truths = 0;
  for_each_leaf(t, [&](const std::vector<unsigned>&, const SamplePoint& s, const Cell& c) {
    on += sign_at(P("x^2 + y^2 - 1", kYX), s) == 0;
    truths += c.truth.value();
  });
  CHECK(truths == on);
  CHECK(truths == 4);
  for (const char* s : {"1 = 0", "0 = 0"}) {
    auto g = Formula::parse(s, kYX);
    auto tg = build_cad(g, kYX, PlanOptions{});
    bool expect = std::string(s) == "0 = 0";
    for_each_leaf(tg, [&](const std::vector<unsigned>&, const SamplePoint&, const Cell& c) { CHECK(c.truth == expect); });
  }
}

TEST_CASE("sampling oracle on three-variable examples") {
  const char* fs[] = {"x^2 + y^2 + z^2 - 1 < 0 and z > x*y", "z - x*y = 0 and z - x - y = 0",
                      "x^2 + y^2 + z^2 - 1 = 0 and x + y + z > 0"};
  unsigned seed = 3;
  for (auto s : fs) {
    auto f = Formula::parse(s, VarOrder({"x", "y", "z"}));
    for (auto pol : {EcPolicy::None, EcPolicy::Auto}) {
      auto t = build_cad(f, f.order(), PlanOptions{pol});
      check_tree(t.root, 0, t.depth());
      sampling_oracle(t, f, ++seed, pol == EcPolicy::None);
    }
  }
}

TEST_CASE("cell cap") {
  auto f = Formula::parse("x^2 + y^2 - 1 = 0", kYX);
  BuildOptions b;
  b.cell_cap = 5;
  std::optional<ErrorKind> kind;
  try {
    build_cad(f, kYX, PlanOptions{}, b);
  } catch (const Error& e) {
    kind = e.kind();
  }
  CHECK(kind == ErrorKind::CapExceeded);
}

TEST_CASE("recorded signs and json") {
  auto f = Formula::parse("x^2 + y^2 - 1 = 0", kYX);
  BuildOptions b;
  b.record_signs = true;
  auto t = build_cad(f, kYX, PlanOptions{}, b);
  for_each_leaf(t, [&](const std::vector<unsigned>&, const SamplePoint& s, const Cell& c) {
    REQUIRE(c.signs.size() == 1);
    CHECK(c.signs[0] == sign_at(t.plan.levels[1].lifting_polys[0], s));
  });
  auto j = tree_to_json(t);
  CHECK(j.find("\"total\": 13") != std::string::npos);
}
