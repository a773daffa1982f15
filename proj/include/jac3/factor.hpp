#pragma once
#include <vector>

#include "jac3/field.hpp"
#include "jac3/poly.hpp"

namespace jac3 {

struct FactorUnit {
  Poly<Fq> f;  // monic irreducible
  u32 mult = 0;
};

// deterministic ordering on monic polynomials: degree, then coefficients
// from the leading end down in the canonical element order
bool poly_less(const Poly<Fq>& a, const Poly<Fq>& b);

// complete factorization over the coefficient level into monic irreducibles,
// sorted by poly_less; the leading coefficient is dropped (returned monic)
std::vector<FactorUnit> factorize(const Poly<Fq>& f, u64 seed);

bool is_irreducible_poly(const Poly<Fq>& f);

// distinct roots in the coefficient level
std::vector<Fq> poly_roots(const Poly<Fq>& f, u64 seed);

// largest squarefree divisor (product of the distinct irreducible factors)
Poly<Fq> squarefree_part(const Poly<Fq>& f, u64 seed);

}  // namespace jac3
