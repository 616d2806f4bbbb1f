#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cad/projection.hpp"
#include "cad/realalg.hpp"

namespace cad {

class Formula;

enum class CellKind { Sector, Section };

/// A cell stores only its own (last) coordinate; the full sample is the path from the root.
struct Cell {
  unsigned index = 1;  // odd = sector, even = section
  CellKind kind = CellKind::Sector;
  /// The whole cylinder over the base cell (no lifting polynomial was used).
  bool cylinder = false;
  AlgebraicNumber coord;
  /// Lifting polynomials (of this cell's level) vanishing here; sections only.
  std::vector<unsigned> vanishing;
  /// Signs of the level's lifting polynomials at the sample (when recorded).
  std::vector<int> signs;
  std::optional<bool> truth;
  std::vector<Cell> children;
};

struct CellCount {
  std::size_t total = 0;  // cells of the top level
  std::vector<std::size_t> per_level;
  std::size_t sections = 0;  // among top-level cells, by kind of the last coordinate
  std::size_t sectors = 0;
  std::size_t all_levels = 0;
};

struct BuildOptions {
  std::size_t cell_cap = 1000000;
  bool record_signs = false;
};

struct CadTree {
  ProjectionPlan plan;
  Cell root;  // level 0
  std::size_t depth() const { return plan.nvars(); }
};

/// CAD of the line for univariate polynomials in variable 0 of an n-variable ring.
std::vector<Cell> base_phase(const std::vector<Polynomial>& ps);

/// Stack over the cell with sample `base` (coordinates of variables below v).
/// `base_is_sector` with `ec_at_base_level` (or a cylinder base) gives one cylinder cell.
std::vector<Cell> lift_stack(const SamplePoint& base, bool base_is_sector, bool base_is_cylinder,
                             const std::vector<Polynomial>& level_polys, bool ec_at_base_level, Var v);

CadTree build_cad(const ProjectionPlan& plan, const BuildOptions& options = {});

CellCount cell_count(const CadTree& t);

/// Truth of a quantifier-free formula at every top-level cell.
void truth_assign(CadTree& t, const Formula& f);

/// Visit every top-level cell with its index vector and sample.
void for_each_leaf(const CadTree& t, const std::function<void(const std::vector<unsigned>&, const SamplePoint&, const Cell&)>& fn);

/// Descend to the top-level cell containing a point given by rational coordinates.
std::vector<unsigned> locate(const CadTree& t, const std::vector<Rational>& point);
const Cell& cell_at(const CadTree& t, const std::vector<unsigned>& index);

std::string tree_to_json(const CadTree& t, int indent = 2);

}  // namespace cad
