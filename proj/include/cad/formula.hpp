#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cad/lifting.hpp"
#include "cad/polynomial.hpp"
#include "cad/projection.hpp"
#include "cad/realalg.hpp"

namespace cad {

enum class Rel { Eq, Ne, Lt, Le, Gt, Ge };
const char* to_string(Rel r);
bool holds(Rel r, int sign);

struct FNode;
using FPtr = std::shared_ptr<const FNode>;

/// Boolean tree. Atoms compare a polynomial with 0; `implies` is gone after parsing,
/// `iff` is kept as a node so that shared subformulas are not duplicated.
struct FNode {
  enum class Kind { True, False, Atom, Not, And, Or, Iff, Exists, Forall };
  Kind kind = Kind::True;
  Polynomial poly;
  Rel rel = Rel::Eq;
  Var var = 0;  // quantified variable
  std::vector<FPtr> kids;
};

FPtr f_true();
FPtr f_false();
FPtr f_atom(Polynomial p, Rel r);
FPtr f_not(FPtr a);
FPtr f_and(std::vector<FPtr> kids);
FPtr f_or(std::vector<FPtr> kids);
FPtr f_implies(FPtr a, FPtr b);
FPtr f_iff(FPtr a, FPtr b);
FPtr f_exists(Var v, FPtr body);
FPtr f_forall(Var v, FPtr body);

class Formula {
 public:
  Formula() = default;
  Formula(VarOrder order, FPtr root);

  /// Variables are ordered by first appearance.
  static Formula parse(std::string_view text);
  /// Every variable must be in `order`.
  static Formula parse(std::string_view text, const VarOrder& order);

  const VarOrder& order() const noexcept { return order_; }
  const FNode& root() const { return *root_; }
  const FPtr& root_ptr() const noexcept { return root_; }

  std::string to_string() const;
  /// Same formula over `target`, which must contain every variable of this one.
  Formula reorder(const VarOrder& target) const;

  bool is_quantifier_free() const;
  bool is_closed() const;
  /// Leading quantifier block and the rest.
  std::vector<std::pair<FNode::Kind, Var>> prefix() const;
  FPtr matrix() const;

  /// Distinct atom polynomials in order of appearance.
  std::vector<Polynomial> polynomials() const;
  /// Variables actually occurring in atoms or quantifiers.
  std::vector<Var> used_vars() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  VarOrder order_;
  FPtr root_ = f_true();
};

/// Negation pushed through the quantifier prefix (interchanging exists and forall).
Formula negate(const Formula& f);

/// Top-level equality conjuncts of the negation normal form of the prenex matrix.
std::vector<Polynomial> identify_ecs(const Formula& f);

bool evaluate_at_point(const Formula& f, const SamplePoint& s);
bool evaluate_at_point(const Formula& f, const std::vector<Rational>& point);

ProjectionPlan plan_projection(const Formula& f, const VarOrder& order, const PlanOptions& options);

/// CAD of the formula's matrix over `order`; truth is assigned when f is quantifier-free.
CadTree build_cad(const Formula& f, const VarOrder& order, const PlanOptions& plan_options,
                  const BuildOptions& build_options = {});

struct Decision {
  bool value = false;
  CellCount cells;
  int ell = 0;
};

/// Truth of a closed formula. Quantified variables must be ordered so that each
/// quantifier block binds the next variables of `order`; adjacent quantifiers of the
/// same kind may appear in any order.
Decision decide(const Formula& f, const VarOrder& order, const PlanOptions& plan_options = {},
                const BuildOptions& build_options = {});

}  // namespace cad
