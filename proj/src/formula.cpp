#include "cad/formula.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "cad/error.hpp"
#include "text.hpp"

namespace cad {

using Kind = FNode::Kind;

const char* to_string(Rel r) {
  switch (r) {
    case Rel::Eq: return "=";
    case Rel::Ne: return "!=";
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Gt: return ">";
    case Rel::Ge: return ">=";
  }
  return "?";
}

bool holds(Rel r, int s) {
  switch (r) {
    case Rel::Eq: return s == 0;
    case Rel::Ne: return s != 0;
    case Rel::Lt: return s < 0;
    case Rel::Le: return s <= 0;
    case Rel::Gt: return s > 0;
    case Rel::Ge: return s >= 0;
  }
  return false;
}

namespace {

Rel negated(Rel r) {
  switch (r) {
    case Rel::Eq: return Rel::Ne;
    case Rel::Ne: return Rel::Eq;
    case Rel::Lt: return Rel::Ge;
    case Rel::Le: return Rel::Gt;
    case Rel::Gt: return Rel::Le;
    case Rel::Ge: return Rel::Lt;
  }
  return r;
}

Rel parse_rel(const std::string& s) {
  if (s == "=") return Rel::Eq;
  if (s == "!=") return Rel::Ne;
  if (s == "<") return Rel::Lt;
  if (s == "<=") return Rel::Le;
  if (s == ">") return Rel::Gt;
  return Rel::Ge;
}

FPtr node(Kind k, std::vector<FPtr> kids = {}) {
  auto n = std::make_shared<FNode>();
  n->kind = k;
  n->kids = std::move(kids);
  return n;
}

FPtr nary(Kind k, std::vector<FPtr> kids) {
  std::vector<FPtr> flat;
  for (auto& c : kids) {
    if (c->kind == k) flat.insert(flat.end(), c->kids.begin(), c->kids.end());
    else flat.push_back(std::move(c));
  }
  if (flat.empty()) return k == Kind::And ? f_true() : f_false();
  if (flat.size() == 1) return flat.front();
  return node(k, std::move(flat));
}

FPtr quant(Kind k, Var v, FPtr body) {
  auto n = std::make_shared<FNode>();
  n->kind = k;
  n->var = v;
  n->kids = {std::move(body)};
  return n;
}

}  // namespace

FPtr f_true() { return node(Kind::True); }
FPtr f_false() { return node(Kind::False); }
FPtr f_atom(Polynomial p, Rel r) {
  auto n = std::make_shared<FNode>();
  n->kind = Kind::Atom;
  n->poly = std::move(p);
  n->rel = r;
  return n;
}
FPtr f_not(FPtr a) { return node(Kind::Not, {std::move(a)}); }
FPtr f_and(std::vector<FPtr> kids) { return nary(Kind::And, std::move(kids)); }
FPtr f_or(std::vector<FPtr> kids) { return nary(Kind::Or, std::move(kids)); }
FPtr f_implies(FPtr a, FPtr b) { return f_or({f_not(std::move(a)), std::move(b)}); }
FPtr f_iff(FPtr a, FPtr b) { return node(Kind::Iff, {std::move(a), std::move(b)}); }
FPtr f_exists(Var v, FPtr body) { return quant(Kind::Exists, v, std::move(body)); }
FPtr f_forall(Var v, FPtr body) { return quant(Kind::Forall, v, std::move(body)); }

// ---------------------------------------------------------------- parsing

namespace {

using text::Cursor;
using text::Tok;

class Parser {
 public:
  Parser(Cursor& cur, const VarOrder& order) : cur_(cur), order_(order) {}

  FPtr formula() {
    FPtr lhs = disjunction();
    if (cur_.at_word("implies")) {
      cur_.next();
      return f_implies(lhs, formula());
    }
    if (cur_.at_word("iff")) {
      cur_.next();
      return f_iff(lhs, formula());
    }
    return lhs;
  }

 private:
  FPtr disjunction() {
    std::vector<FPtr> kids{conjunction()};
    while (cur_.at_word("or")) {
      cur_.next();
      kids.push_back(conjunction());
    }
    return kids.size() == 1 ? kids.front() : f_or(std::move(kids));
  }

  FPtr conjunction() {
    std::vector<FPtr> kids{unary()};
    while (cur_.at_word("and")) {
      cur_.next();
      kids.push_back(unary());
    }
    return kids.size() == 1 ? kids.front() : f_and(std::move(kids));
  }

  FPtr unary() {
    if (cur_.at_word("not")) {
      cur_.next();
      return f_not(unary());
    }
    if (cur_.at_word("true")) {
      cur_.next();
      return f_true();
    }
    if (cur_.at_word("false")) {
      cur_.next();
      return f_false();
    }
    if (cur_.at_word("exists") || cur_.at_word("forall")) {
      bool ex = cur_.next().text == "exists";
      const auto& t = cur_.peek();
      if (t.kind != Tok::Ident || text::is_keyword(t.text)) throw ParseError(t.pos, "expected variable after quantifier");
      cur_.next();
      auto v = order_.find(t.text);
      if (!v) throw ParseError(t.pos, "variable '" + t.text + "' not in ordering");
      if (!cur_.at(Tok::Dot)) throw ParseError(cur_.peek().pos, "expected '.' after quantified variable");
      cur_.next();
      FPtr body = formula();
      return ex ? f_exists(*v, body) : f_forall(*v, body);
    }
    if (cur_.at(Tok::LParen)) {
      auto m = cur_.mark();
      try {
        return atom();
      } catch (const ParseError& e1) {
        cur_.reset(m);
        try {
          cur_.next();
          FPtr f = formula();
          if (!cur_.at(Tok::RParen)) throw ParseError(cur_.peek().pos, "expected ')'");
          cur_.next();
          return f;
        } catch (const ParseError& e2) {
          if (e1.position() > e2.position()) throw e1;
          throw;
        }
      }
    }
    return atom();
  }

  FPtr atom() {
    auto lhs = text::parse_expr(cur_);
    const auto& t = cur_.peek();
    if (t.kind != Tok::Rel) throw ParseError(t.pos, t.kind == Tok::End ? "expected relation" : "expected relation, got '" + t.text + "'");
    cur_.next();
    auto rhs = text::parse_expr(cur_);
    return f_atom(text::to_polynomial(*lhs, order_) - text::to_polynomial(*rhs, order_), parse_rel(t.text));
  }

  Cursor& cur_;
  const VarOrder& order_;
};

Formula parse_with(std::string_view src, const VarOrder& order) {
  Cursor cur(text::tokenize(src));
  Parser p(cur, order);
  FPtr root = p.formula();
  if (!cur.at(Tok::End)) throw ParseError(cur.peek().pos, "trailing input '" + cur.peek().text + "'");
  return Formula(order, root);
}

}  // namespace

Formula::Formula(VarOrder order, FPtr root) : order_(std::move(order)), root_(std::move(root)) {}

Formula Formula::parse(std::string_view src) {
  std::vector<std::string> names;
  for (const auto& t : text::tokenize(src))
    if (t.kind == Tok::Ident && !text::is_keyword(t.text) && std::find(names.begin(), names.end(), t.text) == names.end())
      names.push_back(t.text);
  return parse_with(src, VarOrder(std::move(names)));
}

Formula Formula::parse(std::string_view src, const VarOrder& order) { return parse_with(src, order); }

// ---------------------------------------------------------------- printing

namespace {

int precedence(Kind k) {
  switch (k) {
    case Kind::Iff:
    case Kind::Exists:
    case Kind::Forall: return 0;
    case Kind::Or: return 1;
    case Kind::And: return 2;
    default: return 3;
  }
}

std::string print(const FNode& n, const VarOrder& order, int need) {
  std::string s;
  switch (n.kind) {
    case Kind::True: s = "true"; break;
    case Kind::False: s = "false"; break;
    case Kind::Atom: s = to_string(n.poly, order) + " " + to_string(n.rel) + " 0"; break;
    case Kind::Not: s = "not " + print(*n.kids[0], order, 3); break;
    case Kind::And:
    case Kind::Or: {
      const char* op = n.kind == Kind::And ? " and " : " or ";
      int p = precedence(n.kind);
      for (std::size_t i = 0; i < n.kids.size(); ++i) s += (i ? op : "") + print(*n.kids[i], order, p + 1);
      break;
    }
    case Kind::Iff: s = print(*n.kids[0], order, 1) + " iff " + print(*n.kids[1], order, 0); break;
    case Kind::Exists:
    case Kind::Forall:
      s = std::string(n.kind == Kind::Exists ? "exists " : "forall ") + order.name(n.var) + ". " + print(*n.kids[0], order, 0);
      break;
  }
  if (precedence(n.kind) < need) return "(" + s + ")";
  return s;
}

}  // namespace

std::string Formula::to_string() const { return print(*root_, order_, 0); }

// ---------------------------------------------------------------- structure

namespace {

FPtr remap_node(const FPtr& n, const std::vector<Var>& map, std::size_t nvars) {
  switch (n->kind) {
    case Kind::True:
    case Kind::False: return n;
    case Kind::Atom: return f_atom(n->poly.remap(map, nvars), n->rel);
    case Kind::Exists:
    case Kind::Forall: return quant(n->kind, map.at(n->var), remap_node(n->kids[0], map, nvars));
    default: {
      auto c = std::make_shared<FNode>(*n);
      for (auto& k : c->kids) k = remap_node(k, map, nvars);
      return c;
    }
  }
}

void walk(const FNode& n, const std::function<void(const FNode&)>& fn) {
  fn(n);
  for (const auto& k : n.kids) walk(*k, fn);
}

bool same(const FNode& a, const VarOrder& oa, const FNode& b, const VarOrder& ob) {
  if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
  if (a.kind == Kind::Atom && (a.rel != b.rel || to_string(a.poly, oa) != to_string(b.poly, ob))) return false;
  if ((a.kind == Kind::Exists || a.kind == Kind::Forall) && oa.name(a.var) != ob.name(b.var)) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!same(*a.kids[i], oa, *b.kids[i], ob)) return false;
  return true;
}

}  // namespace

Formula Formula::reorder(const VarOrder& target) const {
  std::vector<Var> map(order_.size());
  for (Var v = 0; v < order_.size(); ++v) {
    auto t = target.find(order_.name(v));
    if (!t) {
      bool used = false;
      for (Var u : used_vars()) used |= u == v;
      if (used) fail(ErrorKind::OrderingMismatch, "variable '" + order_.name(v) + "' missing from the target ordering");
      map[v] = 0;  // unused, never consulted
      continue;
    }
    map[v] = *t;
  }
  return Formula(target, remap_node(root_, map, target.size()));
}

bool Formula::is_quantifier_free() const {
  bool qf = true;
  walk(*root_, [&](const FNode& n) { qf &= n.kind != Kind::Exists && n.kind != Kind::Forall; });
  return qf;
}

std::vector<Var> Formula::used_vars() const {
  std::set<Var> vs;
  walk(*root_, [&](const FNode& n) {
    if (n.kind == Kind::Atom)
      for (Var v = 0; v < n.poly.nvars(); ++v)
        if (n.poly.involves(v)) vs.insert(v);
    if (n.kind == Kind::Exists || n.kind == Kind::Forall) vs.insert(n.var);
  });
  return {vs.begin(), vs.end()};
}

bool Formula::is_closed() const {
  // A variable is free if some atom uses it outside every binder for it.
  bool closed = true;
  std::vector<int> bound(order_.size(), 0);
  std::function<void(const FNode&)> rec = [&](const FNode& n) {
    if (n.kind == Kind::Atom) {
      for (Var v = 0; v < n.poly.nvars(); ++v)
        if (n.poly.involves(v) && bound[v] == 0) closed = false;
      return;
    }
    bool q = n.kind == Kind::Exists || n.kind == Kind::Forall;
    if (q) ++bound[n.var];
    for (const auto& k : n.kids) rec(*k);
    if (q) --bound[n.var];
  };
  rec(*root_);
  return closed;
}

std::vector<std::pair<Kind, Var>> Formula::prefix() const {
  std::vector<std::pair<Kind, Var>> out;
  const FNode* n = root_.get();
  while (n->kind == Kind::Exists || n->kind == Kind::Forall) {
    out.emplace_back(n->kind, n->var);
    n = n->kids[0].get();
  }
  return out;
}

FPtr Formula::matrix() const {
  FPtr n = root_;
  while (n->kind == Kind::Exists || n->kind == Kind::Forall) n = n->kids[0];
  return n;
}

std::vector<Polynomial> Formula::polynomials() const {
  std::vector<Polynomial> out;
  PolySet seen;
  walk(*root_, [&](const FNode& n) {
    if (n.kind == Kind::Atom && seen.insert(n.poly).second) out.push_back(n.poly);
  });
  return out;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.order_ == b.order_) return same(*a.root_, a.order_, *b.root_, b.order_);
  for (Var v : b.used_vars())
    if (!a.order_.find(b.order_.name(v))) return false;
  for (Var v : a.used_vars())
    if (!b.order_.find(a.order_.name(v))) return false;
  Formula c = b.reorder(a.order_);
  return same(*a.root_, a.order_, *c.root_, c.order_);
}

Formula negate(const Formula& f) {
  auto pre = f.prefix();
  FPtr body = f_not(f.matrix());
  for (auto it = pre.rbegin(); it != pre.rend(); ++it)
    body = it->first == Kind::Exists ? f_forall(it->second, body) : f_exists(it->second, body);
  return Formula(f.order(), body);
}

// ---------------------------------------------------------------- ECs and evaluation

namespace {

FPtr nnf(const FPtr& n, bool neg) {
  switch (n->kind) {
    case Kind::True: return neg ? f_false() : n;
    case Kind::False: return neg ? f_true() : n;
    case Kind::Atom: return neg ? f_atom(n->poly, negated(n->rel)) : n;
    case Kind::Not: return nnf(n->kids[0], !neg);
    case Kind::And:
    case Kind::Or: {
      std::vector<FPtr> kids;
      for (const auto& k : n->kids) kids.push_back(nnf(k, neg));
      bool conj = (n->kind == Kind::And) != neg;
      return conj ? f_and(std::move(kids)) : f_or(std::move(kids));
    }
    case Kind::Iff: {
      const FPtr& a = n->kids[0];
      const FPtr& b = n->kids[1];
      if (!neg) return f_or({f_and({nnf(a, false), nnf(b, false)}), f_and({nnf(a, true), nnf(b, true)})});
      return f_or({f_and({nnf(a, false), nnf(b, true)}), f_and({nnf(a, true), nnf(b, false)})});
    }
    case Kind::Exists:
    case Kind::Forall: {
      Kind k = (n->kind == Kind::Exists) != neg ? Kind::Exists : Kind::Forall;
      return quant(k, n->var, nnf(n->kids[0], neg));
    }
  }
  return n;
}

bool eval_qf(const FNode& n, const std::function<int(const Polynomial&)>& sign) {
  switch (n.kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: return holds(n.rel, sign(n.poly));
    case Kind::Not: return !eval_qf(*n.kids[0], sign);
    case Kind::And:
      for (const auto& k : n.kids)
        if (!eval_qf(*k, sign)) return false;
      return true;
    case Kind::Or:
      for (const auto& k : n.kids)
        if (eval_qf(*k, sign)) return true;
      return false;
    case Kind::Iff: return eval_qf(*n.kids[0], sign) == eval_qf(*n.kids[1], sign);
    default: fail(ErrorKind::Precondition, "formula is not quantifier-free");
  }
}

}  // namespace

std::vector<Polynomial> identify_ecs(const Formula& f) {
  FPtr m = f.matrix();
  bool qf = true;
  walk(*m, [&](const FNode& n) { qf &= n.kind != Kind::Exists && n.kind != Kind::Forall; });
  if (!qf) return {};
  FPtr g = nnf(m, false);
  std::vector<FPtr> conj = g->kind == Kind::And ? g->kids : std::vector<FPtr>{g};
  std::vector<Polynomial> out;
  PolySet seen;
  for (const auto& c : conj) {
    if (c->kind != Kind::Atom || c->rel != Rel::Eq || c->poly.is_constant()) continue;
    Polynomial p = normalize(c->poly);
    if (seen.insert(p).second) out.push_back(p);
  }
  return out;
}

bool evaluate_at_point(const Formula& f, const SamplePoint& s) {
  return eval_qf(f.root(), [&](const Polynomial& p) { return sign_at(p, s); });
}

bool evaluate_at_point(const Formula& f, const std::vector<Rational>& point) {
  return eval_qf(f.root(), [&](const Polynomial& p) { return sign(p.evaluate(point)); });
}

// ---------------------------------------------------------------- CAD driver

ProjectionPlan plan_projection(const Formula& f0, const VarOrder& order, const PlanOptions& options) {
  Formula f = f0.reorder(order);
  std::vector<Polynomial> ecs;
  if (options.policy == EcPolicy::Auto) ecs = identify_ecs(f);
  return plan_projection(f.polynomials(), ecs, order, options);
}

namespace {

// Evaluates a formula on a CAD tree, caching each atom's sign at the cell of the
// atom's main variable while walking down.
class TreeEvaluator {
 public:
  TreeEvaluator(const Formula& f, std::size_t depth) : f_(f), depth_(depth), by_level_(depth) {
    std::vector<bool> used(depth, false);
    for (Var v : f.used_vars()) used[v] = true;
    used_ = used;
    walk(f.root(), [&](const FNode& n) {
      if (n.kind != Kind::Atom || index_.count(&n)) return;
      unsigned id = static_cast<unsigned>(polys_.size());
      index_[&n] = id;
      polys_.push_back(&n.poly);
      auto mv = n.poly.main_var();
      level_.push_back(mv ? static_cast<int>(*mv) : -1);
      if (mv) by_level_[*mv].push_back(id);
    });
    signs_.assign(polys_.size(), 0);
    for (unsigned i = 0; i < polys_.size(); ++i)
      if (level_[i] < 0) signs_[i] = sign(polys_[i]->constant_value());
  }

  void enter(const Cell& c, Var v) {
    sample_.push_back(c.coord);
    for (unsigned id : by_level_[v]) signs_[id] = sign_at(*polys_[id], sample_);
  }
  void leave() { sample_.pop_back(); }

  bool eval(const FNode& n, const Cell& cell, std::size_t level) {
    switch (n.kind) {
      case Kind::True: return true;
      case Kind::False: return false;
      case Kind::Atom: {
        unsigned id = index_.at(&n);
        if (level_[id] >= static_cast<int>(level)) fail(ErrorKind::Precondition, "atom uses a variable that is not bound at this level");
        return holds(n.rel, signs_[id]);
      }
      case Kind::Not: return !eval(*n.kids[0], cell, level);
      case Kind::And:
        for (const auto& k : n.kids)
          if (!eval(*k, cell, level)) return false;
        return true;
      case Kind::Or:
        for (const auto& k : n.kids)
          if (eval(*k, cell, level)) return true;
        return false;
      case Kind::Iff: return eval(*n.kids[0], cell, level) == eval(*n.kids[1], cell, level);
      case Kind::Exists:
      case Kind::Forall: {
        std::vector<Var> block;
        const FNode* body = &n;
        while (body->kind == n.kind) {
          block.push_back(body->var);
          body = body->kids[0].get();
        }
        return eval_block(n.kind == Kind::Exists, block, *body, cell, level);
      }
    }
    return false;
  }

  void assign(Cell& cell, std::size_t level) {
    if (level == depth_) {
      cell.truth = eval(f_.root(), cell, level);
      return;
    }
    for (auto& c : cell.children) {
      enter(c, level);
      assign(c, level + 1);
      leave();
    }
  }

 private:
  bool eval_block(bool exists, std::vector<Var> block, const FNode& body, const Cell& cell, std::size_t level) {
    if (block.empty()) return eval(body, cell, level);
    if (level >= depth_) fail(ErrorKind::Internal, "quantified variable beyond the tree depth");
    auto it = std::find(block.begin(), block.end(), static_cast<Var>(level));
    if (it == block.end()) {
      if (used_[level]) fail(ErrorKind::OrderingMismatch, "quantifier order is incompatible with the variable order");
      // A variable the formula never mentions: every cell of the stack agrees.
      const Cell& c = cell.children.front();
      enter(c, level);
      bool r = eval_block(exists, block, body, c, level + 1);
      leave();
      return r;
    }
    block.erase(it);
    for (const auto& c : cell.children) {
      enter(c, level);
      bool r = eval_block(exists, block, body, c, level + 1);
      leave();
      if (r == exists) return r;
    }
    return !exists;
  }

  const Formula& f_;
  std::size_t depth_;
  std::vector<bool> used_;
  std::map<const FNode*, unsigned> index_;
  std::vector<const Polynomial*> polys_;
  std::vector<int> level_;
  std::vector<std::vector<unsigned>> by_level_;
  std::vector<int> signs_;
  SamplePoint sample_;
};

}  // namespace

void truth_assign(CadTree& t, const Formula& f0) {
  Formula f = f0.order() == t.plan.order ? f0 : f0.reorder(t.plan.order);
  if (!f.is_quantifier_free()) fail(ErrorKind::Precondition, "truth assignment needs a quantifier-free formula");
  TreeEvaluator ev(f, t.depth());
  ev.assign(t.root, 0);
}

CadTree build_cad(const Formula& f0, const VarOrder& order, const PlanOptions& plan_options,
                  const BuildOptions& build_options) {
  Formula f = f0.reorder(order);
  CadTree t = build_cad(plan_projection(f, order, plan_options), build_options);
  if (f.is_quantifier_free()) truth_assign(t, f);
  return t;
}

Decision decide(const Formula& f0, const VarOrder& order, const PlanOptions& plan_options,
                const BuildOptions& build_options) {
  Formula f = f0.reorder(order);
  if (!f.is_closed()) fail(ErrorKind::Precondition, "decide needs a closed formula");
  CadTree t = build_cad(plan_projection(f, order, plan_options), build_options);
  TreeEvaluator ev(f, t.depth());
  Decision d;
  d.value = ev.eval(f.root(), t.root, 0);
  d.cells = cell_count(t);
  d.ell = t.plan.ell;
  return d;
}

}  // namespace cad
