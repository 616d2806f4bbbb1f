#include "cad/lifting.hpp"

#include <json.hpp>

#include "cad/error.hpp"

namespace cad {

namespace {

struct MergedRoot {
  AlgebraicNumber value;
  std::vector<unsigned> sources;
};

void merge_root(std::vector<MergedRoot>& roots, const AlgebraicNumber& r, unsigned src) {
  std::size_t lo = 0, hi = roots.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto c = compare(roots[mid].value, r);
    if (c == 0) {
      roots[mid].sources.push_back(src);
      return;
    }
    if (c < 0) lo = mid + 1;
    else hi = mid;
  }
  roots.insert(roots.begin() + static_cast<long>(lo), MergedRoot{r, {src}});
}

// A rational strictly between a < b.
Rational between(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  for (int guard = 0; guard < 100000; ++guard) {
    if (a.upper() < b.lower()) return simplest_between(a.upper(), b.lower());
    if (!a.is_rational()) a.refine();
    if (!b.is_rational()) b.refine();
  }
  fail(ErrorKind::Internal, "could not separate adjacent roots");
}

std::vector<MergedRoot> merged_roots(const SamplePoint& base, const std::vector<Polynomial>& polys, Var v) {
  std::vector<MergedRoot> roots;
  for (unsigned i = 0; i < polys.size(); ++i) {
    auto r = roots_above(polys[i], base, v);
    if (r.nullified) {
      std::string where;
      for (const auto& c : base) where += (where.empty() ? "" : ", ") + c.to_string();
      fail(ErrorKind::WellOriented, "lifting polynomial vanishes identically over the sample (" + where +
                                         "); McCallum projection is not well-oriented here");
    }
    for (const auto& a : r.roots) merge_root(roots, a, i);
  }
  return roots;
}

std::vector<Cell> stack_from_roots(std::vector<MergedRoot> roots) {
  std::vector<Cell> cells;
  cells.reserve(2 * roots.size() + 1);
  auto sector = [&](Rational q) {
    Cell c;
    c.index = static_cast<unsigned>(cells.size() + 1);
    c.kind = CellKind::Sector;
    c.coord = AlgebraicNumber(q);
    cells.push_back(std::move(c));
  };
  if (roots.empty()) {
    sector(Rational(0));
    return cells;
  }
  sector(Rational(floor(roots.front().value.lower()) - 1));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Cell s;
    s.index = static_cast<unsigned>(cells.size() + 1);
    s.kind = CellKind::Section;
    s.coord = roots[i].value;
    s.vanishing = std::move(roots[i].sources);
    cells.push_back(std::move(s));
    if (i + 1 < roots.size()) sector(between(roots[i].value, roots[i + 1].value));
  }
  sector(Rational(ceil(roots.back().value.upper()) + 1));
  return cells;
}

}  // namespace

std::vector<Cell> base_phase(const std::vector<Polynomial>& ps) {
  for (const auto& p : ps)
    for (Var u = 1; u < p.nvars(); ++u)
      if (p.involves(u)) fail(ErrorKind::Precondition, "base phase needs polynomials in the lowest variable only");
  return stack_from_roots(merged_roots(SamplePoint{}, ps, 0));
}

std::vector<Cell> lift_stack(const SamplePoint& base, bool base_is_sector, bool base_is_cylinder,
                             const std::vector<Polynomial>& level_polys, bool ec_at_base_level, Var v) {
  if (base.size() != v) fail(ErrorKind::DimensionMismatch, "base sample does not match the lifting variable");
  if (base_is_cylinder || (ec_at_base_level && base_is_sector)) {
    Cell c;
    c.cylinder = true;
    c.coord = AlgebraicNumber(Rational(0));
    return {std::move(c)};
  }
  return stack_from_roots(merged_roots(base, level_polys, v));
}

namespace {

struct Builder {
  const ProjectionPlan& plan;
  const BuildOptions& opt;
  std::size_t made = 0;
  SamplePoint sample;

  void count(std::size_t k) {
    made += k;
    if (made > opt.cell_cap) fail(ErrorKind::CapExceeded, "cell cap of " + std::to_string(opt.cell_cap) + " exceeded");
  }

  void record_signs(Cell& c, Var v) {
    const auto& polys = plan.levels[v].lifting_polys;
    c.signs.assign(polys.size(), 0);
    for (unsigned i = 0; i < polys.size(); ++i) {
      if (std::find(c.vanishing.begin(), c.vanishing.end(), i) != c.vanishing.end()) continue;
      c.signs[i] = sign_at(polys[i], sample);
    }
  }

  // Fill the children of `cell`, whose sample is `sample` (length v).
  void lift(Cell& cell, Var v) {
    const std::size_t n = plan.nvars();
    if (v == n) return;
    bool ec_below = v > 0 && plan.levels[v - 1].ec.has_value();
    cell.children = lift_stack(sample, v > 0 && cell.kind == CellKind::Sector, cell.cylinder,
                               plan.levels[v].lifting_polys, ec_below, v);
    count(cell.children.size());
    for (auto& c : cell.children) {
      sample.push_back(c.coord);
      if (opt.record_signs && !c.cylinder) record_signs(c, v);
      lift(c, v + 1);
      sample.pop_back();
    }
  }
};

void count_rec(const Cell& c, std::size_t level, std::size_t n, CellCount& out) {
  if (level > 0) {
    ++out.per_level[level - 1];
    ++out.all_levels;
  }
  if (level == n) {
    ++out.total;
    if (c.kind == CellKind::Section) ++out.sections;
    else ++out.sectors;
    return;
  }
  for (const auto& ch : c.children) count_rec(ch, level + 1, n, out);
}

}  // namespace

CadTree build_cad(const ProjectionPlan& plan, const BuildOptions& options) {
  CadTree t{plan, Cell{}};
  t.root.kind = CellKind::Section;  // a point; never a sector for refinement purposes
  Builder b{t.plan, options, 0, {}};
  b.lift(t.root, 0);
  return t;
}

CellCount cell_count(const CadTree& t) {
  CellCount out;
  out.per_level.assign(t.depth(), 0);
  count_rec(t.root, 0, t.depth(), out);
  if (t.depth() == 0) out.total = 1;
  return out;
}

void for_each_leaf(const CadTree& t,
                   const std::function<void(const std::vector<unsigned>&, const SamplePoint&, const Cell&)>& fn) {
  std::vector<unsigned> idx;
  SamplePoint s;
  std::function<void(const Cell&, std::size_t)> rec = [&](const Cell& c, std::size_t level) {
    if (level == t.depth()) {
      fn(idx, s, c);
      return;
    }
    for (const auto& ch : c.children) {
      idx.push_back(ch.index);
      s.push_back(ch.coord);
      rec(ch, level + 1);
      idx.pop_back();
      s.pop_back();
    }
  };
  rec(t.root, 0);
}

std::vector<unsigned> locate(const CadTree& t, const std::vector<Rational>& point) {
  if (point.size() < t.depth()) fail(ErrorKind::DimensionMismatch, "point does not cover every variable");
  std::vector<unsigned> idx;
  SamplePoint prefix;
  const Cell* cell = &t.root;
  for (Var v = 0; v < t.depth(); ++v) {
    const auto& stack = cell->children;
    if (stack.size() == 1 && stack[0].cylinder) {
      idx.push_back(1);
      cell = &stack[0];
    } else {
      auto roots = merged_roots(prefix, t.plan.levels[v].lifting_polys, v);
      if (2 * roots.size() + 1 != stack.size())
        fail(ErrorKind::Internal, "stack over the point differs from the stack over the sample (delineability)");
      AlgebraicNumber x(point[v]);
      unsigned pos = 1;
      for (const auto& r : roots) {
        auto c = compare(x, r.value);
        if (c < 0) break;
        if (c == 0) {
          ++pos;
          break;
        }
        pos += 2;
      }
      idx.push_back(pos);
      cell = &stack[pos - 1];
    }
    prefix.emplace_back(point[v]);
  }
  return idx;
}

const Cell& cell_at(const CadTree& t, const std::vector<unsigned>& index) {
  const Cell* c = &t.root;
  for (unsigned i : index) {
    if (i == 0 || i > c->children.size()) fail(ErrorKind::Precondition, "cell index out of range");
    c = &c->children[i - 1];
  }
  return *c;
}

std::string tree_to_json(const CadTree& t, int indent) {
  using nlohmann::json;
  const auto& order = t.plan.order;
  std::function<json(const Cell&, std::size_t, std::vector<unsigned>&)> rec = [&](const Cell& c, std::size_t level,
                                                                                  std::vector<unsigned>& idx) {
    json j;
    j["index"] = idx;
    if (level > 0) {
      j["kind"] = c.cylinder ? "cylinder" : (c.kind == CellKind::Section ? "section" : "sector");
      j["sample"] = c.coord.to_string(order.name(level - 1));
      if (!c.signs.empty()) j["signs"] = c.signs;
    }
    if (c.truth) j["truth"] = *c.truth;
    if (level < t.depth()) {
      json kids = json::array();
      for (const auto& ch : c.children) {
        idx.push_back(ch.index);
        kids.push_back(rec(ch, level + 1, idx));
        idx.pop_back();
      }
      j["stack"] = std::move(kids);
    }
    return j;
  };
  json out;
  out["order"] = order.names();
  auto cc = cell_count(t);
  out["cells"] = {{"total", cc.total}, {"per_level", cc.per_level}, {"sections", cc.sections}, {"sectors", cc.sectors}};
  json prov = json::array();
  for (Var v = 0; v < t.depth(); ++v) {
    json a = json::array();
    for (const auto& p : t.plan.levels[v].lifting_polys) a.push_back(to_string(p, order));
    prov.push_back({{"variable", order.name(v)}, {"lifting_polys", a}});
  }
  out["provenance"] = std::move(prov);
  std::vector<unsigned> idx;
  out["root"] = rec(t.root, 0, idx);
  return out.dump(indent);
}

}  // namespace cad
