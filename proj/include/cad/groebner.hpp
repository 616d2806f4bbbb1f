#pragma once

#include <compare>
#include <vector>

#include "cad/polynomial.hpp"

namespace cad {

enum class MonomialOrderKind { Lex, DegRevLex };

/// Monomial order over a VarOrder; the highest variable is the most significant
/// ("x > y" for the order (y, x)).
struct MonomialOrder {
  MonomialOrderKind kind = MonomialOrderKind::Lex;

  std::strong_ordering compare(const Exponents& a, const Exponents& b) const;
  bool greater(const Exponents& a, const Exponents& b) const { return compare(a, b) > 0; }
};

const char* to_string(MonomialOrderKind k);

struct IdealBasis {
  std::size_t nvars = 0;
  std::vector<Polynomial> gens;
  MonomialOrder order;
  bool is_groebner = false;
};

const Term& leading_term(const Polynomial& p, const MonomialOrder& order);
Polynomial s_polynomial(const Polynomial& a, const Polynomial& b, const MonomialOrder& order);

/// Fully reduced remainder of p modulo b.gens.
Polynomial normal_form(const Polynomial& p, const IdealBasis& b);

/// Reduced Groebner basis with monic generators, sorted by decreasing leading monomial.
/// Zero generators are ignored; an all-zero input yields the basis of the zero ideal.
IdealBasis buchberger(const std::vector<Polynomial>& gens, std::size_t nvars, MonomialOrder order);

/// Krull dimension from leading monomials; -1 for the unit ideal, nvars for the zero ideal.
int dimension(const IdealBasis& b);

/// Generators involving only the `keep` lowest variables. Needs a lex basis.
std::vector<Polynomial> elimination_ideal(const IdealBasis& b, std::size_t keep);

}  // namespace cad
