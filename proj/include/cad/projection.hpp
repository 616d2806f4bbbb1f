#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cad/polynomial.hpp"

namespace cad {

enum class EcOrigin { Input, Resultant, Groebner };
enum class EcPolicy { None, Designated, Auto };
enum class PropagationMode { Resultant, Groebner };

const char* to_string(EcOrigin o);

struct ECDesignation {
  Var level = 0;
  Polynomial poly;
  EcOrigin origin = EcOrigin::Input;
};

/// Polynomials with main variable `var`.
struct PlanLevel {
  Var var = 0;
  std::vector<Polynomial> projection_polys;
  std::vector<Polynomial> lifting_polys;
  std::optional<ECDesignation> ec;
  /// EC candidates existed but none was primitive.
  bool fallback = false;
  /// Candidates considered at this level, designated or not.
  std::vector<Polynomial> ec_candidates;
  std::vector<std::string> notes;
  /// Largest total degree among ECs propagated from this level, before their squarefree parts were taken.
  unsigned propagated_raw_degree = 0;
};

struct ProjectionPlan {
  VarOrder order;
  std::vector<PlanLevel> levels;  // levels[v] has main variable v
  int ell = 0;
  PropagationMode mode = PropagationMode::Resultant;

  std::size_t nvars() const { return order.size(); }
};

struct PlanOptions {
  EcPolicy policy = EcPolicy::None;
  PropagationMode mode = PropagationMode::Resultant;
  /// Used by the designated policy; at most one per main variable.
  std::vector<Polynomial> designated;
  std::size_t projection_cap = 10000;
};

std::vector<Polynomial> mccallum_project(const std::vector<Polynomial>& ps, Var v);

/// Reduced projection with respect to a primitive equational constraint.
/// Contents of the other polynomials are kept (they are part of the projection of
/// any set whose primitive parts are projected).
std::vector<Polynomial> reduced_project(const Polynomial& ec, const std::vector<Polynomial>& others, Var v);

/// Candidate ECs below v implied by the given ECs with main variable v.
/// `raw_degree` receives the largest total degree of a candidate before normalization.
std::vector<Polynomial> propagate_ecs(const std::vector<Polynomial>& ecs, Var v, PropagationMode mode,
                                      unsigned* raw_degree = nullptr);

/// Minimal by (degree in main variable, total degree, printed form).
const Polynomial& pick_ec(const std::vector<Polynomial>& candidates, const VarOrder& order);

/// `polys` are all polynomials of the formula, `ecs` its equational constraints
/// (consulted by the auto policy).
ProjectionPlan plan_projection(const std::vector<Polynomial>& polys, const std::vector<Polynomial>& ecs,
                               const VarOrder& order, const PlanOptions& options);

std::string plan_to_json(const ProjectionPlan& plan, int indent = 2);

}  // namespace cad
