#include "cad/groebner.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "cad/error.hpp"

namespace cad {

std::strong_ordering MonomialOrder::compare(const Exponents& a, const Exponents& b) const {
  if (kind == MonomialOrderKind::Lex) return lex_compare(a, b);
  std::uint64_t da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  std::uint64_t db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (da != db) return da <=> db;
  // Reverse lex: the smallest variable decides, and a larger exponent there means smaller.
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return b[i] <=> a[i];
  return std::strong_ordering::equal;
}

const char* to_string(MonomialOrderKind k) { return k == MonomialOrderKind::Lex ? "lex" : "degrevlex"; }

namespace {

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exponents quotient(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

Polynomial monic(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) return p;
  return p * (Rational(1) / leading_term(p, order).coef);
}

struct Greater {
  const MonomialOrder* order;
  bool operator()(const Exponents& a, const Exponents& b) const { return order->greater(a, b); }
};

using TermMap = std::map<Exponents, Rational, Greater>;

// Reduce against `gens` (given with leading terms); returns the remainder.
Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& gens, const std::vector<Term>& lts,
                  const MonomialOrder& order) {
  TermMap work(Greater{&order});
  for (const auto& t : p.terms()) work.emplace(t.exponents, t.coef);
  std::vector<Term> rem;
  while (!work.empty()) {
    auto it = work.begin();
    Exponents e = it->first;
    Rational c = it->second;
    work.erase(it);
    std::size_t k = 0;
    while (k < gens.size() && !divides(lts[k].exponents, e)) ++k;
    if (k == gens.size()) {
      rem.push_back(Term{std::move(e), std::move(c)});
      continue;
    }
    Exponents q = quotient(e, lts[k].exponents);
    Rational f = c / lts[k].coef;
    for (const auto& t : gens[k].terms()) {
      if (t.exponents == lts[k].exponents) continue;
      Exponents m(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) m[i] = t.exponents[i] + q[i];
      auto [pos, inserted] = work.emplace(std::move(m), -f * t.coef);
      if (!inserted) {
        pos->second -= f * t.coef;
        if (pos->second == 0) work.erase(pos);
      }
    }
  }
  return Polynomial::from_terms(p.nvars(), std::move(rem));
}

std::vector<Term> leading_terms(const std::vector<Polynomial>& gens, const MonomialOrder& order) {
  std::vector<Term> lts;
  lts.reserve(gens.size());
  for (const auto& g : gens) lts.push_back(leading_term(g, order));
  return lts;
}

}  // namespace

const Term& leading_term(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) fail(ErrorKind::UndefinedInput, "leading term of the zero polynomial");
  if (order.kind == MonomialOrderKind::Lex) return p.terms().front();
  const Term* best = &p.terms().front();
  for (const auto& t : p.terms())
    if (order.greater(t.exponents, best->exponents)) best = &t;
  return *best;
}

Polynomial s_polynomial(const Polynomial& a, const Polynomial& b, const MonomialOrder& order) {
  const Term& la = leading_term(a, order);
  const Term& lb = leading_term(b, order);
  Exponents l = lcm(la.exponents, lb.exponents);
  Polynomial ma = Polynomial::monomial(quotient(l, la.exponents), Rational(1) / la.coef);
  Polynomial mb = Polynomial::monomial(quotient(l, lb.exponents), Rational(1) / lb.coef);
  return ma * a - mb * b;
}

Polynomial normal_form(const Polynomial& p, const IdealBasis& b) {
  if (p.nvars() != b.nvars) fail(ErrorKind::OrderingMismatch, "polynomial and basis live in different rings");
  std::vector<Polynomial> gens;
  for (const auto& g : b.gens)
    if (!g.is_zero()) gens.push_back(g);
  return reduce(p, gens, leading_terms(gens, b.order), b.order);
}

IdealBasis buchberger(const std::vector<Polynomial>& input, std::size_t nvars, MonomialOrder order) {
  std::vector<Polynomial> g;
  for (const auto& p : input) {
    if (p.nvars() != nvars) fail(ErrorKind::OrderingMismatch, "generator lives in a different ring");
    if (!p.is_zero()) g.push_back(monic(p, order));
  }
  IdealBasis out{nvars, {}, order, true};
  if (g.empty()) return out;
  for (const auto& p : g)
    if (p.is_constant()) {
      out.gens = {Polynomial::constant(nvars, 1)};
      return out;
    }

  std::vector<Term> lts = leading_terms(g, order);
  // Pair set with normal selection (smallest lcm first).
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  auto has_pair = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return std::find(pairs.begin(), pairs.end(), std::make_pair(i, j)) != pairs.end();
  };
  for (std::size_t j = 1; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);

  while (!pairs.empty()) {
    auto best = pairs.begin();
    Exponents best_l = lcm(lts[best->first].exponents, lts[best->second].exponents);
    for (auto it = pairs.begin() + 1; it != pairs.end(); ++it) {
      Exponents l = lcm(lts[it->first].exponents, lts[it->second].exponents);
      if (order.greater(best_l, l)) {
        best = it;
        best_l = std::move(l);
      }
    }
    auto [i, j] = *best;
    pairs.erase(best);
    if (coprime(lts[i].exponents, lts[j].exponents)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (divides(lts[k].exponents, best_l) && !has_pair(i, k) && !has_pair(j, k)) chain = true;
    }
    if (chain) continue;
    Polynomial r = reduce(s_polynomial(g[i], g[j], order), g, lts, order);
    if (r.is_zero()) continue;
    if (r.is_constant()) {
      out.gens = {Polynomial::constant(nvars, 1)};
      return out;
    }
    r = monic(r, order);
    std::size_t n = g.size();
    g.push_back(r);
    lts.push_back(leading_term(r, order));
    for (std::size_t k = 0; k < n; ++k) pairs.emplace_back(k, n);
  }

  // Minimize, then inter-reduce.
  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < g.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < g.size() && !redundant; ++b) {
      if (a == b || !divides(lts[b].exponents, lts[a].exponents)) continue;
      // Equal leading monomials: keep the first.
      if (lts[a].exponents != lts[b].exponents || b < a) redundant = true;
    }
    if (!redundant) keep.push_back(a);
  }
  std::vector<Polynomial> minimal;
  for (auto a : keep) minimal.push_back(g[a]);
  std::vector<Polynomial> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<Polynomial> others;
    for (std::size_t b = 0; b < minimal.size(); ++b)
      if (b != a) others.push_back(minimal[b]);
    const Term lt = leading_term(minimal[a], order);
    Polynomial tail = minimal[a] - Polynomial::monomial(lt.exponents, lt.coef);
    Polynomial nf = reduce(tail, others, leading_terms(others, order), order);
    reduced.push_back(monic(nf + Polynomial::monomial(lt.exponents, lt.coef), order));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return order.greater(leading_term(a, order).exponents, leading_term(b, order).exponents);
  });
  out.gens = std::move(reduced);
  return out;
}

int dimension(const IdealBasis& b) {
  if (!b.is_groebner) fail(ErrorKind::Precondition, "dimension needs a Groebner basis");
  std::vector<Exponents> lms;
  for (const auto& g : b.gens) {
    if (g.is_zero()) continue;
    if (g.is_constant()) return -1;
    lms.push_back(leading_term(g, b.order).exponents);
  }
  const std::size_t n = b.nvars;
  if (n > 20) fail(ErrorKind::Precondition, "dimension: too many variables for subset enumeration");
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& m : lms) {
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i)
        if (m[i] && !(mask & (1u << i))) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

std::vector<Polynomial> elimination_ideal(const IdealBasis& b, std::size_t keep) {
  if (b.order.kind != MonomialOrderKind::Lex) fail(ErrorKind::Precondition, "elimination ideal needs a lex basis");
  if (!b.is_groebner) fail(ErrorKind::Precondition, "elimination ideal needs a Groebner basis");
  std::vector<Polynomial> out;
  for (const auto& g : b.gens) {
    if (g.is_zero()) continue;
    auto mv = g.main_var();
    if (mv ? *mv < keep : true) out.push_back(g);
  }
  return out;
}

}  // namespace cad
