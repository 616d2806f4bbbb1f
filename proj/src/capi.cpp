#include "cad/cad.h"

#include <cstring>
#include <sstream>
#include <string>

#include "cad/bench.hpp"
#include "cad/error.hpp"
#include "cad/formula.hpp"
#include "cad/groebner.hpp"

struct cad_formula {
  cad::Formula f;
};

struct cad_tree {
  cad::CadTree t;
};

namespace {

thread_local std::string last_error;

cad_status status_of(cad::ErrorKind k) {
  switch (k) {
    case cad::ErrorKind::Parse: return CAD_ERR_PARSE;
    case cad::ErrorKind::WellOriented: return CAD_ERR_WELL_ORIENTED;
    case cad::ErrorKind::CapExceeded: return CAD_ERR_CAP;
    case cad::ErrorKind::PrimitivityViolation: return CAD_ERR_PRIMITIVITY;
    case cad::ErrorKind::OrderingMismatch:
    case cad::ErrorKind::Precondition:
    case cad::ErrorKind::DimensionMismatch:
    case cad::ErrorKind::UndefinedInput: return CAD_ERR_INVALID;
    default: return CAD_ERROR;
  }
}

template <class F>
cad_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return CAD_OK;
  } catch (const cad::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return CAD_ERROR;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) cad::fail(cad::ErrorKind::Precondition, std::string("null argument: ") + what);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    auto b = cur.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    auto e = cur.find_last_not_of(" \t\r\n");
    out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

cad::VarOrder order_for(const cad::Formula& f, const char* order) {
  if (!order || !*order) return f.order();
  return cad::VarOrder(split(order, ','));
}

cad::PlanOptions plan_options(cad_mode mode) {
  cad::PlanOptions o;
  switch (mode) {
    case CAD_MODE_SI: o.policy = cad::EcPolicy::None; break;
    case CAD_MODE_EC_RES: o.policy = cad::EcPolicy::Auto; break;
    case CAD_MODE_EC_GB:
      o.policy = cad::EcPolicy::Auto;
      o.mode = cad::PropagationMode::Groebner;
      break;
    default: cad::fail(cad::ErrorKind::Precondition, "unknown mode");
  }
  return o;
}

cad::BuildOptions build_options(std::size_t cap) {
  cad::BuildOptions b;
  if (cap) b.cell_cap = cap;
  return b;
}

}  // namespace

extern "C" {

const char* cad_version(void) { return "0.1.0"; }
const char* cad_last_error(void) { return last_error.c_str(); }
void cad_string_free(char* s) { std::free(s); }

cad_status cad_mode_parse(const char* name, cad_mode* out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    *out = static_cast<cad_mode>(cad::parse_bench_mode(name));
  });
}

cad_status cad_formula_parse(const char* text, const char* order, cad_formula** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = nullptr;
    auto f = order && *order ? cad::Formula::parse(text, cad::VarOrder(split(order, ',')))
                             : cad::Formula::parse(text);
    *out = new cad_formula{std::move(f)};
  });
}

void cad_formula_free(cad_formula* f) { delete f; }

cad_status cad_formula_to_string(const cad_formula* f, char** out) {
  return guard([&] {
    need(f, "formula");
    need(out, "out");
    *out = dup(f->f.to_string());
  });
}

cad_status cad_formula_order(const cad_formula* f, char** out) {
  return guard([&] {
    need(f, "formula");
    need(out, "out");
    std::string s;
    for (const auto& n : f->f.order().names()) s += (s.empty() ? "" : ",") + n;
    *out = dup(s);
  });
}

cad_status cad_build(const cad_formula* f, const char* order, cad_mode mode, size_t cell_cap, cad_tree** out) {
  return guard([&] {
    need(f, "formula");
    need(out, "out");
    *out = nullptr;
    auto o = order_for(f->f, order);
    *out = new cad_tree{cad::build_cad(f->f, o, plan_options(mode), build_options(cell_cap))};
  });
}

cad_status cad_build_designated(const cad_formula* f, const char* order, const char* ecs, size_t cell_cap,
                                cad_tree** out) {
  return guard([&] {
    need(f, "formula");
    need(ecs, "ecs");
    need(out, "out");
    *out = nullptr;
    auto o = order_for(f->f, order);
    cad::PlanOptions po;
    po.policy = cad::EcPolicy::Designated;
    for (const auto& e : split(ecs, ';')) po.designated.push_back(cad::parse_polynomial(e, o));
    *out = new cad_tree{cad::build_cad(f->f, o, po, build_options(cell_cap))};
  });
}

void cad_tree_free(cad_tree* t) { delete t; }

cad_status cad_tree_count(const cad_tree* t, size_t* total, size_t* per_level, size_t per_level_len, size_t* depth,
                          int* ell) {
  return guard([&] {
    need(t, "tree");
    auto c = cad::cell_count(t->t);
    if (total) *total = c.total;
    if (per_level)
      for (std::size_t i = 0; i < per_level_len && i < c.per_level.size(); ++i) per_level[i] = c.per_level[i];
    if (depth) *depth = t->t.depth();
    if (ell) *ell = t->t.plan.ell;
  });
}

cad_status cad_tree_json(const cad_tree* t, char** out) {
  return guard([&] {
    need(t, "tree");
    need(out, "out");
    *out = dup(cad::tree_to_json(t->t));
  });
}

cad_status cad_tree_plan_json(const cad_tree* t, char** out) {
  return guard([&] {
    need(t, "tree");
    need(out, "out");
    *out = dup(cad::plan_to_json(t->t.plan));
  });
}

cad_status cad_tree_truth_at(const cad_tree* t, const char* const* coords, size_t n, int* truth) {
  return guard([&] {
    need(t, "tree");
    need(truth, "truth");
    if (n != t->t.depth()) cad::fail(cad::ErrorKind::DimensionMismatch, "point dimension differs from the tree depth");
    std::vector<cad::Rational> pt;
    for (std::size_t i = 0; i < n; ++i) {
      need(coords[i], "coordinate");
      cad::Rational q;
      if (q.set_str(coords[i], 10) != 0) throw cad::ParseError(0, std::string("bad rational '") + coords[i] + "'");
      if (q.get_den() == 0) throw cad::ParseError(0, "zero denominator");
      q.canonicalize();
      pt.push_back(q);
    }
    const auto& cell = cad::cell_at(t->t, cad::locate(t->t, pt));
    *truth = cell.truth ? (*cell.truth ? 1 : 0) : -1;
  });
}

cad_status cad_decide(const cad_formula* f, const char* order, cad_mode mode, size_t cell_cap, int* value,
                      size_t* cells) {
  return guard([&] {
    need(f, "formula");
    need(value, "value");
    auto d = cad::decide(f->f, order_for(f->f, order), plan_options(mode), build_options(cell_cap));
    *value = d.value ? 1 : 0;
    if (cells) *cells = d.cells.total;
  });
}

cad_status cad_dh_generate(unsigned depth, const char* f, const char* form, cad_formula** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    auto g = cad::generate_dh(depth, f ? f : "t^2", cad::parse_dh_form(form ? form : "nested"));
    *out = new cad_formula{std::move(g)};
  });
}

cad_status cad_primitivity_report(const cad_formula* f, const char* order, char** out, size_t* imprimitive) {
  return guard([&] {
    need(f, "formula");
    std::optional<cad::VarOrder> o;
    if (order && *order) o = cad::VarOrder(split(order, ','));
    auto r = cad::primitivity_report(f->f, o);
    if (imprimitive) *imprimitive = r.imprimitive;
    if (out) *out = dup(cad::to_string(r));
  });
}

cad_status cad_bound_eq1(unsigned n, unsigned m, unsigned d, char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(cad::bound_eq1(n, m, d).get_str());
  });
}

cad_status cad_bench_run(const char* corpus_dir, const char* modes, size_t cell_cap, char** csv) {
  return guard([&] {
    need(corpus_dir, "corpus_dir");
    need(csv, "csv");
    std::vector<cad::BenchMode> ms;
    for (const auto& m : split(modes && *modes ? modes : "si,ec-res,ec-gb", ',')) ms.push_back(cad::parse_bench_mode(m));
    cad::ExperimentOptions opt;
    opt.build = build_options(cell_cap);
    *csv = dup(cad::to_csv(cad::run_experiment(cad::load_corpus(corpus_dir), ms, opt)));
  });
}

cad_status cad_gb(const char* order, const char* vars, const char* gens, char** out) {
  return guard([&] {
    need(vars, "vars");
    need(gens, "gens");
    need(out, "out");
    std::string ord = order ? order : "lex";
    cad::MonomialOrder mo{ord == "lex" ? cad::MonomialOrderKind::Lex : cad::MonomialOrderKind::DegRevLex};
    if (ord != "lex" && ord != "grevlex" && ord != "drl")
      cad::fail(cad::ErrorKind::Precondition, "unknown monomial order '" + ord + "'");
    cad::VarOrder vo(split(vars, ','));
    std::vector<cad::Polynomial> ps;
    std::string text = gens;
    for (char& c : text)
      if (c == ';') c = '\n';
    for (const auto& line : split(text, '\n'))
      if (line[0] != '#') ps.push_back(cad::parse_polynomial(line, vo));
    auto b = cad::buchberger(ps, vo.size(), mo);
    std::ostringstream o;
    o << "basis (" << cad::to_string(mo.kind) << "):\n";
    for (const auto& g : b.gens) o << "  " << cad::to_string(g, vo) << '\n';
    o << "dimension: " << cad::dimension(b) << '\n';
    if (mo.kind == cad::MonomialOrderKind::Lex) {
      for (std::size_t keep = 1; keep < vo.size(); ++keep) {
        o << "elimination onto {";
        for (std::size_t i = 0; i < keep; ++i) o << (i ? "," : "") << vo.name(i);
        o << "}:";
        auto el = cad::elimination_ideal(b, keep);
        if (el.empty()) o << " (zero ideal)";
        for (const auto& g : el) o << ' ' << cad::to_string(g, vo) << ';';
        o << '\n';
      }
    }
    *out = dup(o.str());
  });
}

}  // extern "C"
