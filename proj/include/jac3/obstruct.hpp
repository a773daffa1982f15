#pragma once

#include <optional>
#include <string>

#include "jac3/branch.hpp"
#include "jac3/quadform.hpp"
#include "jac3/rng.hpp"
#include "jac3/zeta.hpp"

namespace jac3 {

enum class Mode { rational, antirational };

// translate divisor of the theta embedding: a degree-two class, fixed by the
// base Frobenius in rational mode, carried to K - D over the quadratic
// extension in the twisted mode
struct ThetaData {
  Mode mode;
  Divisor D;
};

// one instance of the decision problem; the class data lives over the base
// field in rational mode and over its quadratic extension otherwise
struct ObstructionInput {
  Mode mode;
  ThetaData theta;
  Divisor a;
};

// image of a divisor under the base-field Frobenius x -> x^{p^base_deg},
// acting on divisors of any extension context of the same curve
Divisor base_frobenius_divisor(CurveCtx& cm, u32 base_deg, const Divisor& D);

// degree-two class over the base from the smallest available places
ThetaData find_rational_theta(CurveCtx& c);

// quadric through the canonical model, solved over the working base of td by
// scalar restriction of sample-point conditions over extensions
struct PinnedQuadric {
  QuadForm quad;
  u32 kernel_dim = 0;
  u32 rows = 0;
  u32 mmax = 0;  // largest extension degree sampled
};
PinnedQuadric pin_canonical_quadric(TrigonalData& td);

// conjugate sample fibers of the plus pencil by the base Frobenius and match
// the images against the two pencils; the parameter correspondence must be a
// single invertible Moebius transformation
struct SwapReport {
  std::string outcome;  // "swapped", "fixed", "inconclusive"
  u32 agreed = 0;
  u32 sampled = 0;
  bool mobius_ok = false;
};
SwapReport swap_test(CurveCtx& base, TrigonalData& td, u32 samples);

// points of the curve the quotient descends to over the odd-degree-m
// extension of the base: half pairs fixed by conjugation composed with the
// canonical residual, detected through line sections
i64 twisted_odd_count(CurveCtx& base, TrigonalData& td, u32 m);

struct ObstructionReport {
  Mode mode = Mode::rational;
  bool degenerate = false;
  std::string degeneracy;  // "zero", "point-difference", "doubled-fiber"
  std::string witness;
  bool nontrivial = false;  // the verdict when not degenerate
  bool split = false;
  std::optional<QuadForm> quad;  // over the base field
  QuadClass cls;
  u32 kernel_dim = 0;
  u32 coord_rank = 0;          // rank of the span of 1, t, t', t t'
  std::optional<Fq> ext_unit;  // nonsquare or trace-one unit of k'
  u32 ext_degree = 1;          // 1 for k' = k, 2 for the quadratic extension
  GenusCertificate genus;
  SwapReport swap;
  u64 ms_elapsed = 0;
};

ObstructionReport decide_obstruction(CurveCtx& base, const ObstructionInput& in,
                                     u32 samples = 10);

// randomized instance searches; nullopt when the budget runs out
std::optional<ObstructionInput> find_rational_instance(CurveCtx& c, Rng& rng, u32 budget = 400);
std::optional<ObstructionInput> find_antirational_data(CurveCtx& base, CurveCtx& c2, Rng& rng,
                                                       u32 budget = 400);

}  // namespace jac3
