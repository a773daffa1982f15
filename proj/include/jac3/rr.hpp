#pragma once

#include "jac3/curve.hpp"
#include "jac3/rng.hpp"

namespace jac3 {

// basis of L(D) = {f : div(f) + D >= 0}, presented over a common denominator form
struct RRBasis {
  Form3 den;
  std::vector<Form3> nums;  // same degree as den; f_i = nums[i] / den
  u32 dim() const { return (u32)nums.size(); }
};

// computes L(D) and verifies h0(D) - h0(K - D) = deg D - 2 before returning
RRBasis rr_space(CurveCtx& ctx, const Divisor& D);
u32 h0(CurveCtx& ctx, const Divisor& D);

// divisor of the line z = 0 (canonical class of a smooth plane quartic)
Divisor canonical_divisor(CurveCtx& ctx);

bool is_principal(CurveCtx& ctx, const Divisor& D);
bool linearly_equivalent(CurveCtx& ctx, const Divisor& A, const Divisor& B);

// the unique effective divisor linearly equivalent to D; requires h0(D) == 1
Divisor unique_effective(CurveCtx& ctx, const Divisor& D);

// uniformly chosen closed point of degree <= dmax
Place random_place(CurveCtx& ctx, u32 dmax, Rng& rng);

}  // namespace jac3
