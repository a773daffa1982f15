#pragma once

#include <optional>

#include "jac3/bipoly.hpp"
#include "jac3/curve.hpp"
#include "jac3/rr.hpp"

namespace jac3 {

// point of the projective line over the level of v
struct P1Val {
  Fq v;
  bool inf = false;
};
bool p1_eq(const P1Val& a, const P1Val& b);
std::string p1_repr(const P1Val& a);

// base-point-free degree-four pencil with a chosen basis f_i = g_i / h;
// the map is t = f1 / f0 with fiber E_tau = div(g1 - tau g0) - div(h) + W
struct PencilRep {
  Divisor W;
  Form3 h, g0, g1;
  Divisor divh;
  Divisor E0, Einf;
};

// nullopt when |W| has a base point
std::optional<PencilRep> make_pencil(CurveCtx& ctx, const Divisor& Wrep);

// value of t at a place, via leading series coefficients
P1Val pencil_value(CurveCtx& ctx, const PencilRep& pen, const Place& P);

// value at a place of a ratio of equal-degree forms
P1Val ratio_value(CurveCtx& ctx, const Place& P, const Form3& num, const Form3& den);

// fiber divisor over tau; tau must live over the working base of ctx
Divisor pencil_fiber(CurveCtx& ctx, const PencilRep& pen, const P1Val& tau);

PencilRep transfer_pencil(CurveCtx& src, CurveCtx& dst, const PencilRep& pen);

// plane model of the degree-four map t: a coordinate function theta with
// minimal polynomial P(T, t) over k(t), quartic and separable in T
struct GonalModel {
  Form3 theta_num, theta_den;
  BiPoly P;       // outer variable T, inner variable t
  Poly<Fq> lc;    // leading T-coefficient as a polynomial in t
  Poly<Fq> disc;  // resultant of P and dP/dT in T, nonzero
};
GonalModel gonal_model(CurveCtx& ctx, const PencilRep& pen);

P1Val theta_value(CurveCtx& ctx, const GonalModel& gm, const Place& P);

// cubic resolvent of a quartic through the partition invariant
// t1 t2 + t3 t4; valid in every characteristic
Poly<Fq> resolvent_of_quartic(const Poly<Fq>& quartic);

}  // namespace jac3
