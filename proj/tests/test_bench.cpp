#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <filesystem>
#include <random>

#include "cad/bench.hpp"
#include "cad/error.hpp"
#include "cad_oracle.hpp"

using namespace cad;
using K = FNode::Kind;

namespace {

std::size_t count_quantifiers(const FNode& n) {
  std::size_t c = (n.kind == K::Exists || n.kind == K::Forall) ? 1 : 0;
  for (const auto& k : n.kids) c += count_quantifiers(*k);
  return c;
}

// Truth of the quantifier-free part under a point: strips the prefix.
bool matrix_at(const Formula& f, const std::vector<Rational>& pt) { return oracle::eval_formula(*f.matrix(), pt); }

std::string corpus_dir() {
  for (auto p : {"corpus", "../corpus", "../../corpus"})
    if (std::filesystem::exists(p)) return p;
  return CAD_SOURCE_DIR "/corpus";
}

}  // namespace

TEST_CASE("dh generation") {
  auto nested = generate_dh(1, "t^2", DhForm::Nested);
  CHECK(nested.order().names() == std::vector<std::string>{"x0", "y0", "z1", "x1", "y1"});
  CHECK(count_quantifiers(nested.root()) == 3);
  auto pre = nested.prefix();
  REQUIRE(pre.size() == 3);
  CHECK(pre[0].first == K::Exists);
  CHECK(pre[1].first == K::Forall);
  CHECK(pre[2].first == K::Forall);
  CHECK(nested.to_string() ==
        "exists z1. forall x1. forall y1. not (-y1 + y0 = 0 and x1 - z1 = 0 or y1 - z1 = 0 and -x1 + x0 = 0) or "
        "-y1^2 + x1 = 0");
  // Free variables are exactly x0, y0.
  auto used = nested.used_vars();
  CHECK(used.size() == 5);
  CHECK(!nested.is_closed());

  auto d2 = generate_dh(2, "t^2", DhForm::Prenex);
  CHECK(d2.order().size() == 8);
  CHECK(count_quantifiers(d2.root()) == 6);
  auto neg = generate_dh(2, "t^2", DhForm::Negated);
  CHECK(neg.prefix()[0].first == K::Forall);
  CHECK(neg.prefix()[1].first == K::Exists);
  CHECK(generate_dh(1, "t^3 - t", DhForm::Nested).to_string().find("-y1^3 + y1 + x1 = 0") != std::string::npos);
  CHECK_THROWS_AS(generate_dh(0, "t^2", DhForm::Nested), Error);
  CHECK_THROWS_AS(generate_dh(1, "3", DhForm::Nested), Error);
}

TEST_CASE("dh forms agree pointwise") {
  std::mt19937 rng(17);
  for (unsigned depth : {1u, 2u}) {
    auto prenex = generate_dh(depth, "t^2", DhForm::Prenex);
    auto neg = generate_dh(depth, "t^2", DhForm::Negated);
    auto cnf = generate_dh(depth, "t^2", DhForm::CnfL);
    auto prod = generate_dh(depth, "t^2", DhForm::ProductL);
    const std::size_t n = prenex.order().size();
    std::uniform_int_distribution<int> small(-2, 2);
    for (int i = 0; i < 300; ++i) {
      // Small integers make the equalities of L hold often.
      std::vector<Rational> pt(n);
      for (auto& x : pt) x = small(rng);
      bool a = matrix_at(neg, pt);
      CHECK(a == !matrix_at(prenex, pt));
      CHECK(a == matrix_at(cnf, pt));
      CHECK(a == matrix_at(prod, pt));
    }
  }
}

TEST_CASE("bound of the dominant term") {
  CHECK(bound_eq1(1, 1, 1) == 2);
  CHECK(bound_eq1(2, 2, 2) == 1024);
  CHECK(bound_eq1(3, 1, 3) == 2239488);
  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned m = 1; m <= 3; ++m)
      for (unsigned d = 1; d <= 3; ++d) {
        Integer b = bound_eq1(n, m, d);
        CHECK(bound_eq1(n + 1, m, d) >= b);
        CHECK(bound_eq1(n, m + 1, d) >= b);
        CHECK(bound_eq1(n, m, d + 1) >= b);
        CHECK(2 * bound_eq1(n + 1, m, d) >= b * b);
      }
}

TEST_CASE("experiment rows") {
  auto e1 = parse_corpus_entry("halfplane", "order = y, x\nformula = x^2 + y^2 - 1 = 0 and x > 0\n");
  auto si = run_one(e1, BenchMode::SignInvariant);
  auto ec = run_one(e1, BenchMode::EcResultant);
  CHECK(si.observed.total == 19);
  CHECK(ec.observed.total == 13);
  CHECK(si.ell == 0);
  CHECK(ec.ell == 1);
  CHECK(si.n == 2);
  CHECK(si.m == 2);
  CHECK(si.d == 2);
  CHECK(si.eq1_value == bound_eq1(2, 2, 2));
  CHECK(si.status == "ok");

  auto e2 = parse_corpus_entry("diag", "order = y, x\nformula = x^2 + y^2 - 1 = 0 and x - y = 0");
  auto r2 = run_one(e2, BenchMode::EcResultant);
  CHECK(r2.observed.total == 9);
  CHECK(r2.ell == 2);

  auto e3 = parse_corpus_entry("sq", "order = x, y, z\nformula = z^2 - x = 0 and z^2 - y = 0");
  auto res = run_one(e3, BenchMode::EcResultant);
  auto gb = run_one(e3, BenchMode::EcGroebner);
  CHECK(res.propagated_raw_degree == 2);
  CHECK(gb.propagated_raw_degree == 1);
  REQUIRE(gb.r.has_value());
  CHECK(*gb.r == 1);
  CHECK(gb.ec_bound_note.find("indicative") != std::string::npos);

  ExperimentOptions tight;
  tight.build.cell_cap = 4;
  CHECK(run_one(e1, BenchMode::SignInvariant, tight).status == "cap");
  auto bad = parse_corpus_entry("wo", "order = x, y, z\nformula = z*x - y = 0 and z*y - x > 0");
  auto rb = run_one(bad, BenchMode::SignInvariant);
  CHECK(rb.status == "well-oriented");

  auto csv = to_csv({si, ec});
  CHECK(csv.rfind("id,mode,n,m,d,ell,cells_total,cells_per_level,D_obs,M_obs,time_ms,status\n", 0) == 0);
  CHECK(csv.find("halfplane,si,2,2,2,0,19,5;19,") != std::string::npos);
}

TEST_CASE("corpus") {
  auto corpus = load_corpus(corpus_dir());
  CHECK(corpus.size() >= 10);
  for (const auto& e : corpus) {
    CHECK(e.order.size() <= 3);
    CHECK(e.formula.is_quantifier_free());
  }
  CHECK_THROWS_AS(parse_corpus_entry("x", "order = x\n"), Error);
}

TEST_CASE("primitivity report") {
  // Oracle: each product equality is (a - b)(c - d) with a, b, c, d variables; with
  // main variable v it is imprimitive exactly when one of the two factors misses v.
  for (unsigned depth : {1u, 2u}) {
    auto f = generate_dh(depth, "t^2", DhForm::ProductL);
    auto base = dh_order(depth).names();
    auto z_last = base;
    std::stable_partition(z_last.begin(), z_last.end(), [](const std::string& s) { return s[0] != 'z'; });
    for (const auto& order : {VarOrder(base), VarOrder(z_last)}) {
      auto r = primitivity_report(f, order);
      CHECK(r.entries.size() == 4 * depth);
      std::size_t expected_bad = 0;
      for (unsigned i = 1; i <= depth; ++i) {
        auto nm = [&](char c, unsigned k) { return std::string(1, c) + std::to_string(k); };
        std::string yp = nm('y', i - 1), xp = nm('x', i - 1), x = nm('x', i), y = nm('y', i), z = nm('z', i);
        std::vector<std::array<std::string, 4>> pairs{{yp, y, y, z}, {yp, y, xp, x}, {x, z, y, z}, {x, z, xp, x}};
        for (const auto& q : pairs) {
          Var v = 0;
          for (const auto& s : q) v = std::max(v, *order.find(s));
          bool first_has = *order.find(q[0]) == v || *order.find(q[1]) == v;
          bool second_has = *order.find(q[2]) == v || *order.find(q[3]) == v;
          bool imprimitive = !(first_has && second_has);
          expected_bad += imprimitive;
          Polynomial prod = normalize(parse_polynomial("(" + q[0] + " - " + q[1] + ")*(" + q[2] + " - " + q[3] + ")", order));
          bool found = false;
          for (const auto& e : r.entries)
            if (e.poly == prod) {
              found = true;
              CHECK(e.main_var == v);
              CHECK(e.primitive == !imprimitive);
            }
          CHECK(found);
        }
      }
      CHECK(r.imprimitive == expected_bad);
    }
  }
  auto r1 = primitivity_report(generate_dh(1, "t^2", DhForm::ProductL), VarOrder({"x0", "y0", "x1", "y1", "z1"}));
  auto o = r1.order;
  auto P = [&](const char* s) { return normalize(parse_polynomial(s, o)); };
  bool found = false;
  for (const auto& e : r1.entries)
    if (e.poly == P("(y0 - y1)*(y1 - z1)")) {
      found = true;
      CHECK(!e.primitive);
      CHECK(e.content == P("y0 - y1"));
      CHECK(o.name(e.main_var) == "z1");
    }
  CHECK(found);
  CHECK(primitivity_report(generate_dh(2, "t^2", DhForm::ProductL)).entries.size() == 8);
  auto circle = primitivity_report(Formula::parse("x^2 + y^2 - 1 = 0"));
  REQUIRE(circle.entries.size() == 1);
  CHECK(circle.entries[0].primitive);
  CHECK(circle.imprimitive == 0);
}
