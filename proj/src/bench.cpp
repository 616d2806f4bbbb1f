#include "cad/bench.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cad/error.hpp"
#include "cad/groebner.hpp"

namespace cad {

const char* to_string(DhForm f) {
  switch (f) {
    case DhForm::Nested: return "nested";
    case DhForm::Prenex: return "prenex";
    case DhForm::Negated: return "negated";
    case DhForm::CnfL: return "cnf";
    case DhForm::ProductL: return "product";
  }
  return "?";
}

DhForm parse_dh_form(std::string_view s) {
  if (s == "nested") return DhForm::Nested;
  if (s == "prenex") return DhForm::Prenex;
  if (s == "negated") return DhForm::Negated;
  if (s == "cnf" || s == "cnf_L") return DhForm::CnfL;
  if (s == "product" || s == "product_L") return DhForm::ProductL;
  fail(ErrorKind::Precondition, "unknown form '" + std::string(s) + "'");
}

VarOrder dh_order(unsigned depth) {
  std::vector<std::string> names{"x0", "y0"};
  for (unsigned i = 1; i <= depth; ++i)
    for (const char* p : {"z", "x", "y"}) names.push_back(p + std::to_string(i));
  return VarOrder(std::move(names));
}

namespace {

struct DhVars {
  std::size_t n;
  Var x(unsigned i) const { return i == 0 ? 0 : 3 * i; }
  Var y(unsigned i) const { return i == 0 ? 1 : 3 * i + 1; }
  Var z(unsigned i) const { return 3 * i - 1; }
  Polynomial v(Var u) const { return Polynomial::variable(n, u); }
  FPtr eq(Var a, Var b) const { return f_atom(v(a) - v(b), Rel::Eq); }
  FPtr prod_eq(Var a, Var b, Var c, Var d) const { return f_atom((v(a) - v(b)) * (v(c) - v(d)), Rel::Eq); }
};

FPtr dh_L(const DhVars& V, unsigned i, DhForm form) {
  const Var yp = V.y(i - 1), xp = V.x(i - 1), x = V.x(i), y = V.y(i), z = V.z(i);
  switch (form) {
    case DhForm::CnfL:
      return f_and({f_or({V.eq(yp, y), V.eq(y, z)}), f_or({V.eq(yp, y), V.eq(xp, x)}), f_or({V.eq(x, z), V.eq(y, z)}),
                    f_or({V.eq(x, z), V.eq(xp, x)})});
    case DhForm::ProductL:
      return f_and({V.prod_eq(yp, y, y, z), V.prod_eq(yp, y, xp, x), V.prod_eq(x, z, y, z), V.prod_eq(x, z, xp, x)});
    default: return f_or({f_and({V.eq(yp, y), V.eq(x, z)}), f_and({V.eq(y, z), V.eq(xp, x)})});
  }
}

// f(y) - x as the atom x = f(y).
FPtr dh_P(const DhVars& V, unsigned k, const Polynomial& f) {
  Polynomial fy(V.n);
  Polynomial yk = V.v(V.y(k));
  for (const auto& t : f.terms()) fy += Polynomial::constant(V.n, t.coef) * yk.pow(t.exponents.empty() ? 0 : t.exponents[0]);
  return f_atom(V.v(V.x(k)) - fy, Rel::Eq);
}

}  // namespace

Formula generate_dh(unsigned depth, const Polynomial& f, DhForm form) {
  if (depth < 1) fail(ErrorKind::Precondition, "depth must be at least 1");
  for (Var u = 1; u < f.nvars(); ++u)
    if (f.involves(u)) fail(ErrorKind::Precondition, "f must be univariate");
  if (f.is_constant()) fail(ErrorKind::Precondition, "f must be non-constant");
  VarOrder order = dh_order(depth);
  DhVars V{order.size()};
  FPtr P = dh_P(V, depth, f);
  auto wrap = [&](FPtr body, bool dual) {
    for (unsigned i = depth; i >= 1; --i) {
      if (dual) body = f_forall(V.z(i), f_exists(V.x(i), f_exists(V.y(i), body)));
      else body = f_exists(V.z(i), f_forall(V.x(i), f_forall(V.y(i), body)));
    }
    return body;
  };
  switch (form) {
    case DhForm::Nested: {
      FPtr body = P;
      for (unsigned i = depth; i >= 1; --i)
        body = f_exists(V.z(i), f_forall(V.x(i), f_forall(V.y(i), f_implies(dh_L(V, i, form), body))));
      return Formula(order, body);
    }
    case DhForm::Prenex: {
      std::vector<FPtr> kids;
      for (unsigned i = 1; i <= depth; ++i) kids.push_back(f_not(dh_L(V, i, form)));
      kids.push_back(P);
      return Formula(order, wrap(f_or(std::move(kids)), false));
    }
    default: {
      std::vector<FPtr> kids;
      for (unsigned i = 1; i <= depth; ++i) kids.push_back(dh_L(V, i, form));
      kids.push_back(f_not(P));
      return Formula(order, wrap(f_and(std::move(kids)), true));
    }
  }
}

Formula generate_dh(unsigned depth, std::string_view f, DhForm form) {
  return generate_dh(depth, parse_polynomial(f, VarOrder({"t"})), form);
}

Integer bound_eq1(unsigned n, unsigned m, unsigned d) {
  if (n < 1 || m < 1 || d < 1) fail(ErrorKind::Precondition, "bound needs n, m, d >= 1");
  if (n > 24) fail(ErrorKind::CapExceeded, "bound exponent too large to evaluate");
  unsigned long e = (1UL << n) - 1;
  unsigned long e2 = (1UL << (n - 1)) - 1;
  Integer a, b, c;
  mpz_ui_pow_ui(a.get_mpz_t(), 2UL * d, e);
  mpz_ui_pow_ui(b.get_mpz_t(), m, e);
  mpz_ui_pow_ui(c.get_mpz_t(), 2, e2);
  return a * b * c;
}

const char* to_string(BenchMode m) {
  switch (m) {
    case BenchMode::SignInvariant: return "si";
    case BenchMode::EcResultant: return "ec-res";
    case BenchMode::EcGroebner: return "ec-gb";
  }
  return "?";
}

BenchMode parse_bench_mode(std::string_view s) {
  if (s == "si") return BenchMode::SignInvariant;
  if (s == "ec-res") return BenchMode::EcResultant;
  if (s == "ec-gb") return BenchMode::EcGroebner;
  fail(ErrorKind::Precondition, "unknown mode '" + std::string(s) + "'");
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_names(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

}  // namespace

CorpusEntry parse_corpus_entry(const std::string& id, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line, order, formula;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = trim(std::string_view(line).substr(0, eq));
    if (key == "order") order = trim(std::string_view(line).substr(eq + 1));
    else if (key == "formula") formula = trim(std::string_view(line).substr(eq + 1));
  }
  if (formula.empty()) fail(ErrorKind::Parse, id + ": missing 'formula = ...' line");
  CorpusEntry e;
  e.id = id;
  if (order.empty()) {
    e.formula = Formula::parse(formula);
    e.order = e.formula.order();
  } else {
    e.order = VarOrder(split_names(order));
    e.formula = Formula::parse(formula, e.order);
  }
  return e;
}

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& de : fs::directory_iterator(dir))
    if (de.is_regular_file() && de.path().extension() == ".cad") files.push_back(de.path());
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& p : files) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    out.push_back(parse_corpus_entry(p.stem().string(), ss.str()));
  }
  return out;
}

namespace {

std::string brief(const Integer& z) {
  std::string s = z.get_str();
  if (s.size() <= 30) return s;
  return s.substr(0, 1) + "." + s.substr(1, 3) + "e" + std::to_string(s.size() - 1);
}

Integer ipow(unsigned long base, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

std::string ec_note(unsigned n, unsigned m, unsigned d, int ell) {
  std::ostringstream o;
  o << "indicative, not certified (O-constants set to 1): ";
  if (ell == 0 || n > 20) {
    o << "no designated EC";
    return o.str();
  }
  unsigned long full = 1UL << n, red = 1UL << (n - static_cast<unsigned>(ell));
  o << "(2d)^(2^n)(2m)^(2^(n-l)) = " << brief(ipow(2UL * d, full) * ipow(2UL * m, red));
  o << "; (ld)^(2^(n-l))(2m)^(2^(n-l)) = " << brief(ipow(static_cast<unsigned long>(ell) * d, red) * ipow(2UL * m, red));
  return o.str();
}

const char* status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::WellOriented: return "well-oriented";
    case ErrorKind::CapExceeded: return "cap";
    case ErrorKind::PrimitivityViolation: return "primitivity";
    case ErrorKind::Parse: return "parse";
    default: return "error";
  }
}

}  // namespace

BoundReport run_one(const CorpusEntry& e, BenchMode mode, const ExperimentOptions& opt) {
  BoundReport r;
  r.id = e.id;
  r.mode = mode;
  Formula f = e.formula.reorder(e.order);
  r.n = static_cast<unsigned>(e.order.size());
  PolySet polys;
  for (const auto& p : f.polynomials())
    if (!p.is_constant()) polys.insert(normalize(p));
  r.m = static_cast<unsigned>(polys.size());
  for (const auto& p : polys)
    for (Var v = 0; v < r.n; ++v) r.d = std::max(r.d, static_cast<unsigned>(p.degree_in(v)));
  if (r.n >= 1 && r.m >= 1 && r.d >= 1 && r.n <= 24) r.eq1_value = bound_eq1(r.n, r.m, r.d);

  PlanOptions po;
  po.policy = mode == BenchMode::SignInvariant ? EcPolicy::None : EcPolicy::Auto;
  po.mode = mode == BenchMode::EcGroebner ? PropagationMode::Groebner : PropagationMode::Resultant;
  po.projection_cap = opt.projection_cap;
  auto start = std::chrono::steady_clock::now();
  try {
    if (mode == BenchMode::EcGroebner) {
      auto ecs = identify_ecs(f);
      if (!ecs.empty()) r.r = dimension(buchberger(ecs, r.n, MonomialOrder{MonomialOrderKind::DegRevLex}));
    }
    CadTree t = build_cad(f, e.order, po, opt.build);
    r.ell = t.plan.ell;
    r.observed = cell_count(t);
    for (const auto& p : t.plan.levels[0].projection_polys) r.D_obs = std::max(r.D_obs, static_cast<unsigned>(p.degree_in(0)));
    r.M_obs = static_cast<unsigned>(t.plan.levels[0].projection_polys.size());
    for (const auto& l : t.plan.levels) r.propagated_raw_degree = std::max(r.propagated_raw_degree, l.propagated_raw_degree);
  } catch (const Error& err) {
    r.status = status_of(err.kind());
    r.message = err.what();
  }
  r.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  r.ec_bound_note = ec_note(r.n, r.m, r.d, r.ell);
  return r;
}

std::vector<BoundReport> run_experiment(const std::vector<CorpusEntry>& corpus, const std::vector<BenchMode>& modes,
                                        const ExperimentOptions& opt) {
  std::vector<BoundReport> out;
  for (const auto& e : corpus)
    for (auto m : modes) out.push_back(run_one(e, m, opt));
  return out;
}

std::string to_csv(const std::vector<BoundReport>& rows) {
  std::ostringstream o;
  o << "id,mode,n,m,d,ell,cells_total,cells_per_level,D_obs,M_obs,time_ms,status\n";
  for (const auto& r : rows) {
    std::string per;
    for (std::size_t i = 0; i < r.observed.per_level.size(); ++i)
      per += (i ? ";" : "") + std::to_string(r.observed.per_level[i]);
    char t[32];
    std::snprintf(t, sizeof t, "%.3f", r.time_ms);
    o << r.id << ',' << to_string(r.mode) << ',' << r.n << ',' << r.m << ',' << r.d << ',' << r.ell << ','
      << r.observed.total << ',' << per << ',' << r.D_obs << ',' << r.M_obs << ',' << t << ',' << r.status << '\n';
  }
  return o.str();
}

PrimitivityReport primitivity_report(const Formula& f0, const std::optional<VarOrder>& order) {
  Formula f = order ? f0.reorder(*order) : f0;
  PrimitivityReport r;
  r.order = f.order();
  Formula m(f.order(), f.matrix());
  for (const auto& p : identify_ecs(m)) {
    PrimitivityEntry e;
    e.poly = p;
    e.main_var = *p.main_var();
    auto cp = content_primitive(p, e.main_var);
    e.content = normalize(cp.content);
    e.primitive = cp.content.is_constant();
    if (!e.primitive) ++r.imprimitive;
    r.entries.push_back(std::move(e));
  }
  return r;
}

std::string to_string(const PrimitivityReport& r) {
  std::ostringstream o;
  for (const auto& e : r.entries) {
    o << to_string(e.poly, r.order) << " = 0\tmain " << r.order.name(e.main_var) << '\t'
      << (e.primitive ? "primitive" : "IMPRIMITIVE, content " + to_string(e.content, r.order)) << '\n';
  }
  o << r.entries.size() << " equalities, " << r.imprimitive << " imprimitive\n";
  return o.str();
}

}  // namespace cad
