#pragma once
#include <vector>

#include "jac3/field.hpp"
#include "jac3/linalg.hpp"
#include "jac3/poly.hpp"
#include "jac3/ratfunc.hpp"

namespace jac3 {

// f(x, y) = sum_j ( sum_i c_{ij} x^i ) y^j : outer variable y, inner x
using BiPoly = Poly<Poly<Fq>>;

inline BiPoly bi_zero(const Level* lv) { return BiPoly(Poly<Fq>(lv->zero())); }
inline BiPoly bi_const(const Fq& v) { return BiPoly::constant(Poly<Fq>::constant(v)); }
// x^i y^j with coefficient v
inline BiPoly bi_monomial(const Fq& v, u32 i, u32 j) {
  return BiPoly::monomial(Poly<Fq>::monomial(v, i), j);
}

inline int deg_x(const BiPoly& f) {
  int d = -1;
  for (const auto& row : f.c) d = std::max(d, row.deg());
  return d;
}
inline int deg_y(const BiPoly& f) { return f.deg(); }

inline Fq bi_eval(const BiPoly& f, const Fq& x, const Fq& y) {
  Fq acc = x.lv->zero();
  for (size_t j = f.c.size(); j-- > 0;) acc = acc * y + eval(f.c[j], x);
  return acc;
}
inline Poly<Fq> eval_at_x(const BiPoly& f, const Fq& x0) {
  Poly<Fq> r(x0.lv->zero());
  for (const auto& row : f.c) r.c.push_back(eval(row, x0));
  r.norm();
  return r;
}
inline Poly<Fq> eval_at_y(const BiPoly& f, const Fq& y0) {
  Poly<Fq> acc(y0.lv->zero());
  for (size_t j = f.c.size(); j-- > 0;) acc = acc.scale(y0) + f.c[j];
  return acc;
}
inline BiPoly swap_xy(const BiPoly& f) {
  const Fq z = f.z.z;
  BiPoly r = bi_zero(z.lv);
  for (int j = 0; j <= f.deg(); ++j)
    for (int i = 0; i <= f.c[j].deg(); ++i)
      if (!f.c[j].c[i].is_zero()) r = r + bi_monomial(f.c[j].c[i], (u32)j, (u32)i);
  return r;
}

// partial derivatives
inline BiPoly d_dy(const BiPoly& f) { return f.derivative(); }
inline BiPoly d_dx(const BiPoly& f) {
  BiPoly r(f.z);
  for (const auto& row : f.c) r.c.push_back(row.derivative());
  r.norm();
  return r;
}

// resultant eliminating the outer variable y; rows of the first argument
// come first in the Sylvester matrix
inline Poly<Fq> resultant_y(const BiPoly& f, const BiPoly& g) {
  const Fq z = f.z.z;
  int m = f.deg(), n = g.deg();
  JAC3_CHECK(m >= 0 && n >= 0, "resultant of zero polynomial");
  Poly<Fq> pz(z.lv->zero());
  if (m == 0 && n == 0) return one_like(pz);
  if (m == 0) {  // Res = f0^n
    Poly<Fq> r = one_like(pz);
    for (int i = 0; i < n; ++i) r = r * f.c[0];
    return r;
  }
  if (n == 0) {
    Poly<Fq> r = one_like(pz);
    for (int i = 0; i < m; ++i) r = r * g.c[0];
    return r;
  }
  Mat<Poly<Fq>> S(pz, m + n, m + n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) S.at(r, r + k) = f.c[m - k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) S.at(n + r, r + k) = g.c[n - k];
  return det_bareiss(S, one_like(pz));
}

// content (gcd of the x-coefficients) and primitive part in k[x][y]
inline Poly<Fq> bi_content(const BiPoly& f) {
  Poly<Fq> c(f.z.z.lv->zero());
  for (const auto& row : f.c) c = gcd(c, row);
  return c;
}
inline BiPoly bi_primitive(const BiPoly& f) {
  Poly<Fq> c = bi_content(f);
  if (c.deg() <= 0) return f;
  BiPoly r(f.z);
  for (const auto& row : f.c) r.c.push_back(divexact(row, c));
  r.norm();
  return r;
}

// lift to y-polynomials with rational-function coefficients
inline Poly<RF> to_rf(const BiPoly& f) {
  const Fq z = f.z.z;
  Poly<RF> r{RF(z)};
  for (const auto& row : f.c) r.c.push_back(RF::of(row));
  r.norm();
  return r;
}
// clear denominators and divide out the content
inline BiPoly from_rf_primitive(const Poly<RF>& f) {
  JAC3_CHECK(!f.is_zero(), "from_rf of zero");
  const Fq z = f.c[0].num.z;
  Poly<Fq> lcm = one_like(Poly<Fq>(z));
  for (const auto& e : f.c) {
    Poly<Fq> g = gcd(lcm, e.den);
    lcm = divexact(lcm, g) * e.den;
  }
  BiPoly r{Poly<Fq>(z)};
  for (const auto& e : f.c) r.c.push_back(e.num * divexact(lcm, e.den));
  r.norm();
  return bi_primitive(r);
}

// gcd in k[x, y]: content gcd times primitive part of the k(x)[y] gcd
inline BiPoly bi_gcd(const BiPoly& f, const BiPoly& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  Poly<Fq> cf = bi_content(f), cg = bi_content(g);
  Poly<Fq> cc = gcd(cf, cg);
  Poly<RF> a = to_rf(bi_primitive(f)), b = to_rf(bi_primitive(g));
  Poly<RF> h = gcd(a, b);
  BiPoly prim = h.deg() <= 0 ? BiPoly::constant(one_like(Poly<Fq>(f.z.z)))
                             : from_rf_primitive(h);
  return prim * BiPoly::constant(cc);
}

// divisibility as elements of k(x)[y]; appropriate for checking that one
// curve equation divides another expression up to x-denominators
inline bool divides_mod_x_units(const BiPoly& f, const BiPoly& g) {
  if (g.is_zero()) return true;
  if (f.is_zero()) return false;
  auto [q, r] = divrem(to_rf(g), to_rf(f));
  (void)q;
  return r.is_zero();
}

}  // namespace jac3
