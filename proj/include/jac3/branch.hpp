#pragma once
#include <optional>
#include <vector>

#include "jac3/trigonal.hpp"

namespace jac3 {

// Galois orbit of branch parameter candidates of the tetragonal map. Every
// geometrically ramified fiber sits over a root of disc * lc or over infinity.
struct BranchOrbit {
  bool inf = false;
  Poly<Fq> factor;           // irreducible monic factor of disc * lc, zero when inf
  u32 r = 1;                 // orbit size: number of conjugate parameters
  Divisor sum;               // sum of the orbit fibers as a base divisor, empty when r > 12
  std::vector<i64> profile;  // geometric multiplicity profile of one fiber, descending

  explicit BranchOrbit(Poly<Fq> f) : factor(std::move(f)) {}
};

// orbits of disc * lc roots plus the fiber at infinity; orbits of degree
// beyond the ramification budget of a degree-four map are reported unramified
std::vector<BranchOrbit> branch_orbits(TrigonalData& td);

// representative parameter of the orbit over ext(r)
P1Val orbit_parameter(TrigonalData& td, const BranchOrbit& bo);

// geometric multiplicity profile of a single fiber, descending
std::vector<i64> divisor_profile(const Divisor& fiber);

// every fiber of the orbit is a doubled divisor
bool orbit_even(const BranchOrbit& bo);

// witness a = 2 half - K with fiber = 2 half over ext(m)
struct SigmaPrimeWitness {
  u32 m = 1;
  P1Val tau;
  Divisor half;
};
std::optional<SigmaPrimeWitness> sigma_prime_test(TrigonalData& td);

// witness a ~ p - q for points p, q over ext(m); p == q for the zero class
struct SigmaDoubleWitness {
  u32 m = 1;
  Divisor p, q;
};
// exact decision through the base locus of the plus system; dmax is retained
// for interface stability and ignored
std::optional<SigmaDoubleWitness> sigma_doubleprime_test(CurveCtx& ctx, const Divisor& a,
                                                         u32 dmax = 0);

struct SingularPoint {
  u32 m = 1;
  TildePoint pt;
};
// nullopt when the double cover model is smooth; otherwise a singular point
std::optional<SingularPoint> tilde_smooth_probe(TrigonalData& td);

// no point of the double cover model is fixed by the involution
bool iota_free_probe(TrigonalData& td);

// total tame ramification of the degree-three quotient map, characteristic >= 5
i64 ramification_total(TrigonalData& td);

}  // namespace jac3
