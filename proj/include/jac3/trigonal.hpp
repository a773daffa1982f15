#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>

#include "jac3/gonal.hpp"

namespace jac3 {

// coefficientwise embedding into a larger level over the same tower
Poly<Fq> embed_poly(Tower& tw, const Poly<Fq>& f, const Level* to);
BiPoly embed_bipoly(Tower& tw, const BiPoly& f, const Level* to);
P1Val embed_p1(Tower& tw, const P1Val& v, const Level* to);

// ordered pair (d, d') of effective degree-two divisors with d + d' equal to
// the pencil fiber over tau; the involution swaps the two entries
struct TildePoint {
  Divisor d, dp;
  P1Val tau;
};

// a degree-zero class away from the degenerate loci, with both pencils
// |K + a| and |K - a|, the quartic model of the plus pencil, its resolvent
// cubic, and cached base changes of everything to extension fields
struct TrigonalData {
  CurveCtx* ctx;
  Divisor a;
  PencilRep plus, minus;
  GonalModel gm;
  BiPoly resolvent;  // monic cubic, outer variable y, inner variable t

  TrigonalData(CurveCtx& c, const Divisor& a0);

  CurveCtx& ext(u32 m);  // context over the degree-m extension of the base
  const PencilRep& plus_at(u32 m);
  const PencilRep& minus_at(u32 m);
  const Divisor& a_at(u32 m);

 private:
  std::map<u32, std::unique_ptr<CurveCtx>> exts_;
  std::map<u32, PencilRep> plus_m_, minus_m_;
  std::map<u32, Divisor> a_m_;
};

// the pairs (d, E_tau - d) over one fiber, d running through the effective
// degree-two subdivisors of E_tau rational over the working base
std::vector<TildePoint> fiber_tilde_points(CurveCtx& cm, const PencilRep& pen, const P1Val& tau);

// all pairs with fiber parameter in P^1 of the working base of cm
std::vector<TildePoint> tilde_points_over(CurveCtx& cm, const PencilRep& pen);

// the unique line through an effective degree-two divisor: secant through two
// points, tangent at a doubled point, or the conjugate-pair chord
Form3 line_through(CurveCtx& ctx, const Divisor& d);

// the double cover is singular at (d, d') exactly when the tangent directions
// spanned by d and by the effective representative of d - a coincide
bool tilde_singular(CurveCtx& cm, const Divisor& a_m, const TildePoint& pt);

// parameter of <K - d> + <K - d'> in the minus pencil, descended to the
// working base; constant on involution orbits
P1Val second_value(CurveCtx& cm, const PencilRep& minus_m, const TildePoint& pt);

// exact point counts over one fiber: subdivisor pairs, involution orbits with
// both entries rational, and orbits swapped by the Frobenius of cm inside the
// quadratic extension c2m
struct FiberCount {
  i64 tilde = 0;
  i64 stable = 0;
  i64 swapped = 0;
};
FiberCount fiber_count_exact(CurveCtx& cm, CurveCtx& c2m, const PencilRep& pen_m,
                             const PencilRep& pen_2m, const P1Val& tau);

// point counts of the double cover and of the quotient curve over the
// degree-m extension; factorization patterns of the quartic model decide
// unexceptional fibers, exact divisor arithmetic handles the rest
struct CoverCounts {
  i64 tilde = 0;
  i64 quotient = 0;
};
CoverCounts cover_counts(TrigonalData& td, u32 m);

// monic quartic of the model specialized at tau over the working base of cm
// (reversed coefficients at infinity); nullopt when the leading coefficient
// vanishes there, i.e. when theta has a pole on the fiber
std::optional<Poly<Fq>> fiber_quartic(CurveCtx& cm, const GonalModel& gm, const P1Val& tau);

// resolvent cubic of the quartic model with denominators cleared: monic in y
// with polynomial coefficients in t, roots equal to lc * (partition values)
BiPoly resolvent_bipoly(const GonalModel& gm);

// decides irreducibility of the resolvent over the algebraic closure of the
// t-line: any linear factor has polynomial root with coefficients in a cubic
// extension, reconstructed by a Newton lift at a separable specialization
// whether a monic separable cubic in y over k[t] has a root in kbar[t],
// equivalently whether it is reducible over kbar(t)
bool cubic_has_closure_root(CurveCtx& ctx, const BiPoly& R);

bool resolvent_absolutely_irreducible(CurveCtx& ctx, const GonalModel& gm);

// Segre coordinates (1, t, t', t t') of a parameter pair, with infinite
// values replaced by the (0 : 1) chart
std::array<Fq, 4> segre_point(Tower& tw, const Level* lv, const P1Val& t, const P1Val& tp);

// scalar restriction: one row over an extension becomes [extension : base]
// rows of base-field coordinates
void restricted_rows(CurveCtx& base, const std::vector<Fq>& row,
                     std::vector<std::vector<Fq>>& out);

// rank of the span of the (1, t, t', t t') rows of sample points over
// extensions m = 1..mmax, restricted to the base field
u32 segre_rank(TrigonalData& td, u32 mmax);

}  // namespace jac3
