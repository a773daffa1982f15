#include <algorithm>
#include <numeric>

#include "jac3/curve.hpp"
#include "jac3/factor.hpp"

namespace jac3 {

// one root of a nonconstant polynomial, taken in a splitting extension
static Fq some_root_ext(CurveCtx& ctx, const Poly<Fq>& u) {
  JAC3_CHECK(u.deg() >= 1, "root of a constant polynomial");
  auto fac = factorize(u, ctx.seed);
  const Poly<Fq>& h = fac.front().f;
  const Level* LE = ctx.tw.level(u.z.lv->deg * (u32)h.deg());
  std::vector<Fq> lifted;
  for (const Fq& e : h.c) lifted.push_back(ctx.tw.embed(e, LE));
  std::vector<Fq> roots = linear_roots(LE, lifted, ctx.seed);
  JAC3_CHECK(!roots.empty(), "factor failed to split in its splitting level");
  return roots[0];
}

static BiPoly bi_lift(CurveCtx& ctx, const BiPoly& f, const Level* L) {
  BiPoly r = bi_zero(L);
  for (const auto& row : f.c) {
    Poly<Fq> nr(L->zero());
    for (const Fq& e : row.c) nr.c.push_back(ctx.tw.embed(e, L));
    nr.norm();
    r.c.push_back(nr);
  }
  r.norm();
  return r;
}

struct AffinePt {
  Fq a, b;
};

// point on the zero set of one nonzero bivariate polynomial
static AffinePt witness_on(CurveCtx& ctx, const BiPoly& g) {
  const Level* L0 = g.z.z.lv;
  if (deg_y(g) == 0) {
    Fq a = some_root_ext(ctx, g.c[0]);
    return {a, a.lv->zero()};
  }
  for (u32 m = 1;; ++m) {
    const Level* L = ctx.tw.level(L0->deg * m);
    BiPoly gL = bi_lift(ctx, g, L);
    u64 cap = 4096;
    Big cardb = L->card();
    if (cardb < cap) cap = (u64)cardb;
    for (u64 i = 0; i < cap; ++i) {
      Fq a0 = L->from_index(i);
      Poly<Fq> gy = eval_at_x(gL, a0);
      if (gy.deg() >= 1) {
        Fq b = some_root_ext(ctx, gy);
        return {ctx.tw.embed(a0, b.lv), b};
      }
      if (gy.is_zero()) return {a0, L->zero()};
    }
    JAC3_CHECK(m < 8, "witness search failed to specialize");
  }
}

// does the family have a common zero over the algebraic closure?
static bool common_affine_zero(CurveCtx& ctx, std::vector<BiPoly> T, AffinePt* wit) {
  const Level* L0 = ctx.kb;
  // drop zeros; a nonzero constant kills everything
  std::vector<BiPoly> S;
  for (auto& t : T) {
    if (t.is_zero()) continue;
    if (deg_y(t) == 0 && t.c[0].deg() == 0) return false;
    S.push_back(t);
  }
  if (S.empty()) {
    *wit = {L0->zero(), L0->zero()};
    return true;
  }
  if (S.size() == 1) {
    *wit = witness_on(ctx, S[0]);
    return true;
  }
  bool all_x = true;
  for (auto& s : S) all_x = all_x && deg_y(s) == 0;
  if (all_x) {
    Poly<Fq> r(L0->zero());
    for (auto& s : S) r = gcd(r, s.c[0]);
    if (r.deg() < 1) return false;
    *wit = {some_root_ext(ctx, r), L0->zero()};
    return true;
  }
  // pivot of minimal positive outer degree
  size_t pi = S.size();
  for (size_t i = 0; i < S.size(); ++i)
    if (deg_y(S[i]) >= 1 && (pi == S.size() || deg_y(S[i]) < deg_y(S[pi]))) pi = i;
  const BiPoly pivot = S[pi];
  // peel off common factors so the resultants below cannot vanish identically
  for (size_t i = 0; i < S.size(); ++i) {
    if (i == pi) continue;
    BiPoly wgc = bi_gcd(pivot, S[i]);
    if (deg_x(wgc) >= 1 || deg_y(wgc) >= 1) {
      std::vector<BiPoly> branch1, branch2;
      for (size_t j = 0; j < S.size(); ++j)
        if (j != pi && j != i) {
          branch1.push_back(S[j]);
          branch2.push_back(S[j]);
        }
      branch1.push_back(wgc);
      // exact cofactors: divide in k(x)[y] and clear denominators
      auto cof = [&](const BiPoly& f) {
        Poly<RF> qq = to_rf(f) / to_rf(wgc);
        return from_rf_primitive(qq);
      };
      branch2.push_back(cof(pivot));
      branch2.push_back(cof(S[i]));
      return common_affine_zero(ctx, branch1, wit) || common_affine_zero(ctx, branch2, wit);
    }
  }
  Poly<Fq> r(L0->zero());
  bool first = true;
  for (size_t i = 0; i < S.size(); ++i) {
    if (i == pi) continue;
    Poly<Fq> Ri = resultant_y(pivot, S[i]);
    JAC3_CHECK(!Ri.is_zero(), "resultant vanished for coprime polynomials");
    r = first ? Ri : gcd(r, Ri);
    first = false;
  }
  if (r.deg() < 1) return false;
  for (const FactorUnit& fu : factorize(r, ctx.seed)) {
    const Level* LA = ctx.tw.level(L0->deg * (u32)fu.f.deg());
    std::vector<Fq> lifted;
    for (const Fq& e : fu.f.c) lifted.push_back(ctx.tw.embed(e, LA));
    std::vector<Fq> roots = linear_roots(LA, lifted, ctx.seed);
    JAC3_CHECK(!roots.empty(), "resultant factor failed to split");
    Fq alpha = roots[0];
    Poly<Fq> gy(LA->zero());
    bool any = false, allzero = true;
    for (auto& s : S) {
      Poly<Fq> sy = eval_at_x(bi_lift(ctx, s, LA), alpha);
      if (sy.is_zero()) continue;
      allzero = false;
      gy = any ? gcd(gy, sy) : sy;
      any = true;
    }
    if (allzero) {
      *wit = {alpha, LA->zero()};
      return true;
    }
    if (gy.deg() >= 1) {
      Fq beta = some_root_ext(ctx, gy);
      *wit = {ctx.tw.embed(alpha, beta.lv), beta};
      return true;
    }
  }
  return false;
}

SmoothReport check_smooth(CurveCtx& ctx) {
  SmoothReport rep;
  const Form3& F = ctx.F;
  JAC3_CHECK(F.d == 4, "smoothness check expects a quartic");
  const Form3 Fx = F.partial(0), Fy = F.partial(1), Fz = F.partial(2);
  const Level* L = ctx.kb;
  if (Fx.is_zero() && Fy.is_zero() && Fz.is_zero()) {
    // every point of the curve is singular; exhibit one
    BiPoly f = F.chart_z();
    if (deg_y(f) >= 1 || (deg_y(f) == 0 && f.c[0].deg() >= 1)) {
      AffinePt w = witness_on(ctx, f);
      Pt3 P{w.a, ctx.tw.embed(w.b, w.a.lv), w.a.lv->one()};
      P.normalize();
      rep.witness = P;
    } else {
      // F is supported on the line at infinity
      Pt3 P{L->zero(), L->one(), L->zero()};
      rep.witness = P;
    }
    rep.smooth = false;
    return rep;
  }
  // affine chart
  std::vector<BiPoly> T{F.chart_z(), Fx.chart_z(), Fy.chart_z(), Fz.chart_z()};
  AffinePt w{L->zero(), L->zero()};
  if (common_affine_zero(ctx, T, &w)) {
    Fq a = w.a, b = w.b;
    if (a.lv != b.lv) {
      const Level* LL = ctx.tw.level(std::lcm(a.lv->deg, b.lv->deg));
      a = ctx.tw.embed(a, LL);
      b = ctx.tw.embed(b, LL);
    }
    Pt3 P{a, b, a.lv->one()};
    P.normalize();
    rep.smooth = false;
    rep.witness = P;
    return rep;
  }
  // the line z = 0: restrictions are binary forms; use x/y as coordinate
  {
    std::vector<Poly<Fq>> B;
    bool allzero = true;
    for (const Form3* G : {&F, &Fx, &Fy, &Fz}) {
      Poly<Fq> b(L->zero());
      for (u32 i = 0; i <= G->d; ++i) b.c.push_back(G->get(i, G->d - i));
      b.norm();
      if (!b.is_zero()) allzero = false;
      B.push_back(b);
    }
    if (allzero) {
      rep.smooth = false;
      rep.witness = Pt3{L->zero(), L->one(), L->zero()};
      return rep;
    }
    Poly<Fq> r(L->zero());
    bool constant_hit = false;
    for (auto& b : B) {
      if (b.is_zero()) continue;
      r = r.is_zero() ? b : gcd(r, b);
      if (r.deg() == 0) constant_hit = true;
    }
    if (!constant_hit && r.deg() >= 1) {
      Fq x0 = some_root_ext(ctx, r);
      Pt3 P{x0, x0.lv->one(), x0.lv->zero()};
      P.normalize();
      rep.smooth = false;
      rep.witness = P;
      return rep;
    }
    // the point (1 : 0 : 0)
    bool all_vanish = true;
    for (const Form3* G : {&F, &Fx, &Fy, &Fz})
      all_vanish = all_vanish && (G->is_zero() || G->get(G->d, 0).is_zero());
    if (all_vanish) {
      rep.smooth = false;
      rep.witness = Pt3{L->one(), L->zero(), L->zero()};
      return rep;
    }
  }
  rep.smooth = true;
  rep.irreducible_checked = true;
  return rep;
}

}  // namespace jac3
