#include "cad/projection.hpp"

#include <algorithm>
#include <json.hpp>

#include "cad/error.hpp"
#include "cad/groebner.hpp"

namespace cad {

const char* to_string(EcOrigin o) {
  switch (o) {
    case EcOrigin::Input: return "input";
    case EcOrigin::Resultant: return "resultant-derived";
    case EcOrigin::Groebner: return "gb-derived";
  }
  return "unknown";
}

namespace {

bool has_main(const Polynomial& p, Var v) {
  auto mv = p.main_var();
  return mv && *mv == v;
}

void add(PolySet& out, const Polynomial& p) {
  if (p.is_zero() || p.is_constant()) return;
  out.insert(normalize(p));
}

// Splits members with main variable v into contents (added to `out`) and primitive parts.
std::vector<Polynomial> primitive_parts(const std::vector<Polynomial>& ps, Var v, PolySet& out) {
  std::vector<Polynomial> prims;
  for (const auto& p : ps) {
    if (p.is_zero()) fail(ErrorKind::UndefinedInput, "projection of the zero polynomial");
    if (p.is_constant()) continue;
    auto mv = *p.main_var();
    if (mv > v) fail(ErrorKind::OrderingMismatch, "projection input above the projected variable");
    if (mv < v) {
      add(out, p);
      continue;
    }
    auto cp = content_primitive(p, v);
    add(out, cp.content);
    prims.push_back(cp.primitive);
  }
  return prims;
}

void add_coefficients(PolySet& out, const Polynomial& b, Var v) {
  for (const auto& c : b.coefficients(v)) add(out, c);
}

std::vector<Polynomial> to_vector(const PolySet& s) { return {s.begin(), s.end()}; }

}  // namespace

std::vector<Polynomial> mccallum_project(const std::vector<Polynomial>& ps, Var v) {
  PolySet out;
  auto prims = primitive_parts(ps, v, out);
  std::vector<Polynomial> basis;
  if (!prims.empty()) basis = squarefree_basis(prims, v);
  for (const auto& b : basis) {
    add_coefficients(out, b, v);
    if (b.degree_in(v) >= 2) add(out, discriminant(b, v));
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) add(out, resultant(basis[i], basis[j], v));
  return to_vector(out);
}

std::vector<Polynomial> reduced_project(const Polynomial& ec0, const std::vector<Polynomial>& others, Var v) {
  if (ec0.is_zero() || ec0.degree_in(v) == 0) fail(ErrorKind::Precondition, "equational constraint is constant in its variable");
  if (!has_main(ec0, v)) fail(ErrorKind::OrderingMismatch, "equational constraint must have the projected main variable");
  auto cp = content_primitive(ec0, v);
  if (!cp.content.is_constant())
    fail(ErrorKind::PrimitivityViolation, "equational constraint is imprimitive in its main variable (content of positive degree); "
         "the reduced projection needs primitive ECs");
  Polynomial ec = squarefree_part(cp.primitive, v);
  PolySet out;
  add_coefficients(out, ec, v);
  if (ec.degree_in(v) >= 2) add(out, discriminant(ec, v));
  auto prims = primitive_parts(others, v, out);
  for (const auto& g : prims) {
    // Factors shared with the EC are part of it.
    Polynomial h = exact_divide(g, gcd(g, ec));
    if (h.degree_in(v) == 0) continue;
    add(out, resultant(ec, h, v));
  }
  return to_vector(out);
}

std::vector<Polynomial> propagate_ecs(const std::vector<Polynomial>& ecs, Var v, PropagationMode mode,
                                      unsigned* raw_degree) {
  for (const auto& e : ecs)
    if (!has_main(e, v)) fail(ErrorKind::OrderingMismatch, "propagation input must have the given main variable");
  PolySet out;
  if (ecs.size() < 2) return {};
  auto keep = [&](const Polynomial& p) {
    if (p.is_zero() || p.is_constant()) return;
    if (raw_degree) *raw_degree = std::max(*raw_degree, static_cast<unsigned>(p.total_degree()));
    Polynomial n = normalize(p);
    out.insert(squarefree_part(n, *n.main_var()));
  };
  if (mode == PropagationMode::Resultant) {
    for (std::size_t i = 0; i < ecs.size(); ++i)
      for (std::size_t j = i + 1; j < ecs.size(); ++j) keep(resultant(ecs[i], ecs[j], v));
  } else {
    auto gb = buchberger(ecs, ecs.front().nvars(), MonomialOrder{MonomialOrderKind::Lex});
    for (const auto& g : elimination_ideal(gb, v)) keep(g);
  }
  return to_vector(out);
}

const Polynomial& pick_ec(const std::vector<Polynomial>& candidates, const VarOrder& order) {
  if (candidates.empty()) fail(ErrorKind::Precondition, "no EC candidates");
  auto key = [&](const Polynomial& p) {
    Var mv = *p.main_var();
    return std::make_tuple(p.degree_in(mv), p.total_degree(), to_string(p, order));
  };
  const Polynomial* best = &candidates.front();
  for (const auto& c : candidates)
    if (key(c) < key(*best)) best = &c;
  return *best;
}

ProjectionPlan plan_projection(const std::vector<Polynomial>& polys, const std::vector<Polynomial>& ecs,
                               const VarOrder& order, const PlanOptions& options) {
  const std::size_t n = order.size();
  if (n == 0) fail(ErrorKind::OrderingMismatch, "empty variable order");
  ProjectionPlan plan;
  plan.order = order;
  plan.mode = options.mode;
  plan.levels.resize(n);
  for (Var v = 0; v < n; ++v) plan.levels[v].var = v;

  // Pending polynomials per main variable.
  std::vector<PolySet> pending(n);
  std::size_t total = 0;
  auto push = [&](const Polynomial& p) {
    if (p.nvars() != n) fail(ErrorKind::OrderingMismatch, "polynomial ring does not match the variable order");
    if (p.is_zero() || p.is_constant()) return;
    if (pending[*p.main_var()].insert(normalize(p)).second && ++total > options.projection_cap)
      fail(ErrorKind::CapExceeded, "projection polynomial cap exceeded");
  };
  for (const auto& p : polys) push(p);

  // EC candidates per main variable, with their origin.
  std::vector<std::vector<std::pair<Polynomial, EcOrigin>>> cands(n);
  auto add_cand = [&](const Polynomial& p, EcOrigin o) {
    if (p.is_zero() || p.is_constant()) return;
    Polynomial q = normalize(p);
    auto& c = cands[*q.main_var()];
    for (const auto& e : c)
      if (e.first == q) return;
    c.emplace_back(q, o);
  };
  if (options.policy == EcPolicy::Auto)
    for (const auto& e : ecs) add_cand(e, EcOrigin::Input);
  if (options.policy == EcPolicy::Designated) {
    for (const auto& e : options.designated) {
      if (e.is_zero() || e.is_constant()) fail(ErrorKind::Precondition, "designated EC is constant");
      Var mv = *e.main_var();
      if (!cands[mv].empty()) fail(ErrorKind::Precondition, "more than one designated EC for variable " + order.name(mv));
      if (!is_primitive(e, mv))
        fail(ErrorKind::PrimitivityViolation,
             "designated EC " + to_string(e, order) + " is imprimitive in " + order.name(mv) + " (content " +
                 to_string(content_primitive(e, mv).content, order) +
                 "); the reduced projection theory only covers primitive ECs");
      add_cand(e, EcOrigin::Input);
      push(e);
    }
  }

  for (Var v = n; v-- > 0;) {
    PlanLevel& lvl = plan.levels[v];
    std::vector<Polynomial> here(pending[v].begin(), pending[v].end());
    for (const auto& c : cands[v]) {
      lvl.ec_candidates.push_back(c.first);
      if (!pending[v].count(c.first)) here.push_back(c.first);
    }

    // Choose the EC at this level.
    if (!cands[v].empty()) {
      std::vector<Polynomial> prim;
      std::vector<EcOrigin> origin;
      for (const auto& [c, o] : cands[v]) {
        if (is_primitive(c, v)) {
          prim.push_back(squarefree_part(c, v));
          origin.push_back(o);
        } else {
          lvl.notes.push_back("skipped imprimitive EC candidate " + to_string(c, order) + " (content " +
                              to_string(content_primitive(c, v).content, order) + ")");
        }
      }
      if (prim.empty()) {
        lvl.fallback = true;
        lvl.notes.push_back("no primitive EC candidate; full projection");
      } else {
        const Polynomial& e = pick_ec(prim, order);
        std::size_t idx = static_cast<std::size_t>(&e - prim.data());
        lvl.ec = ECDesignation{v, e, origin[idx]};
        ++plan.ell;
      }
      // Propagate when two or more ECs are known here (imprimitive ones included:
      // their resultants are still implied equations).
      if (options.policy == EcPolicy::Auto && cands[v].size() >= 2) {
        std::vector<Polynomial> es;
        for (const auto& c : cands[v]) es.push_back(c.first);
        EcOrigin o = options.mode == PropagationMode::Resultant ? EcOrigin::Resultant : EcOrigin::Groebner;
        for (const auto& d : propagate_ecs(es, v, options.mode, &lvl.propagated_raw_degree)) {
          add_cand(d, o);
          push(d);
        }
      }
    }

    std::vector<Polynomial> proj;
    if (lvl.ec) {
      // Basis members dividing the EC are its factors; the rest are "others".
      std::vector<Polynomial> basis = here.empty() ? std::vector<Polynomial>{} : squarefree_basis(here, v);
      std::vector<Polynomial> others;
      PolySet all;
      for (const auto& b : basis) {
        if (!has_main(b, v)) {
          push(b);
          continue;
        }
        all.insert(b);
        if (!try_divide(lvl.ec->poly, b)) others.push_back(b);
      }
      // Contents of the level's polynomials go down unchanged.
      for (const auto& p : here) {
        auto cp = content_primitive(p, v);
        push(cp.content);
      }
      all.insert(lvl.ec->poly);
      lvl.projection_polys.assign(all.begin(), all.end());
      lvl.lifting_polys = {lvl.ec->poly};
      proj = reduced_project(lvl.ec->poly, others, v);
    } else {
      PolySet all;
      if (!here.empty()) {
        for (const auto& p : here) push(content_primitive(p, v).content);
        for (const auto& b : squarefree_basis(here, v)) {
          if (has_main(b, v)) all.insert(b);
          else push(b);
        }
      }
      lvl.projection_polys.assign(all.begin(), all.end());
      lvl.lifting_polys = lvl.projection_polys;
      proj = mccallum_project(lvl.projection_polys, v);
    }
    for (const auto& q : proj) push(q);
  }
  return plan;
}

std::string plan_to_json(const ProjectionPlan& plan, int indent) {
  using nlohmann::json;
  json j;
  j["order"] = plan.order.names();
  j["ell"] = plan.ell;
  j["propagation"] = plan.mode == PropagationMode::Resultant ? "resultant" : "groebner";
  json levels = json::array();
  for (Var v = plan.levels.size(); v-- > 0;) {
    const auto& l = plan.levels[v];
    json jl;
    jl["level"] = v + 1;
    jl["variable"] = plan.order.name(v);
    auto strs = [&](const std::vector<Polynomial>& ps) {
      json a = json::array();
      for (const auto& p : ps) a.push_back(to_string(p, plan.order));
      return a;
    };
    jl["projection_polys"] = strs(l.projection_polys);
    jl["lifting_polys"] = strs(l.lifting_polys);
    if (l.ec) jl["ec"] = {{"poly", to_string(l.ec->poly, plan.order)}, {"origin", to_string(l.ec->origin)}};
    else jl["ec"] = nullptr;
    jl["ec_candidates"] = strs(l.ec_candidates);
    jl["fallback"] = l.fallback;
    if (l.propagated_raw_degree) jl["propagated_raw_degree"] = l.propagated_raw_degree;
    jl["notes"] = l.notes;
    levels.push_back(std::move(jl));
  }
  j["levels"] = std::move(levels);
  return j.dump(indent);
}

}  // namespace cad
