#pragma once

#include <vector>

#include "smoothpoly/poly.hpp"

namespace smoothpoly {

/// Integer Moebius function.
int mobius_int(std::uint64_t n);

/// Number of monic irreducible polynomials of degree n over F_q.
BigInt count_irreducibles(std::uint32_t q, unsigned n);

/// All monic irreducibles of degree n in index order. Throws BudgetExceeded
/// when q^n exceeds limits.irreducible.
std::vector<Poly> enumerate_irreducibles(const FieldPtr& field, unsigned n,
                                         const Limits& limits = {});

/// Degree of the largest irreducible factor (0 for constants).
/// Throws std::domain_error on the zero polynomial.
unsigned largest_factor_degree(const Poly& f);

/// True iff every irreducible factor of f has degree <= m.
bool is_m_smooth(const Poly& f, unsigned m);

bool is_irreducible(const Poly& f);

struct Factor {
  Poly base;  // monic irreducible
  unsigned exp;
};

/// Complete factorization of a nonzero polynomial into monic irreducibles,
/// sorted by base. The leading coefficient is dropped.
std::vector<Factor> factor(const Poly& f);

/// Squarefree decomposition: f / lead(f) = prod parts[i].base^parts[i].exp,
/// each base squarefree, pairwise coprime.
std::vector<Factor> squarefree_decomposition(const Poly& f);

/// Moebius function on monic polynomials. Throws std::invalid_argument on
/// non-monic input.
int mobius(const Poly& f);

/// Phi(g) = #(F_q[t]/g)^*.
BigInt euler_phi(const Poly& g);

/// All monic divisors of f, sorted. Throws BudgetExceeded if there would be
/// more than limits.group of them.
std::vector<Poly> divisors(const Poly& f, const Limits& limits = {});

/// Number of monic divisors.
BigInt tau(const Poly& f);

}  // namespace smoothpoly
