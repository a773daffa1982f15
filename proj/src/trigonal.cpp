#include "jac3/trigonal.hpp"

#include <algorithm>

#include "jac3/factor.hpp"
#include "jac3/linalg.hpp"
#include "jac3/rr.hpp"
#include "jac3/series.hpp"

namespace jac3 {

Poly<Fq> embed_poly(Tower& tw, const Poly<Fq>& f, const Level* to) {
  Poly<Fq> r(to->zero());
  r.c.reserve(f.c.size());
  for (const Fq& e : f.c) r.c.push_back(tw.embed(e, to));
  r.norm();
  return r;
}

BiPoly embed_bipoly(Tower& tw, const BiPoly& f, const Level* to) {
  BiPoly r(Poly<Fq>(to->zero()));
  r.c.reserve(f.c.size());
  for (const Poly<Fq>& co : f.c) r.c.push_back(embed_poly(tw, co, to));
  r.norm();
  return r;
}

P1Val embed_p1(Tower& tw, const P1Val& v, const Level* to) {
  if (v.inf) return P1Val{to->zero(), true};
  return P1Val{tw.embed(v.v, to), false};
}

// all effective subdivisors of E with the prescribed degree
static void subdivisors(const Divisor& E, size_t idx, i64 remaining, Divisor& cur,
                        std::vector<Divisor>& out) {
  if (idx == E.terms.size()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  const Place& P = E.terms[idx].first;
  i64 mx = E.terms[idx].second;
  i64 r = (i64)P.rdeg;
  for (i64 k = 0; k <= mx && k * r <= remaining; ++k) {
    if (k) cur.add(P, k);
    subdivisors(E, idx + 1, remaining - k * r, cur, out);
    if (k) cur.add(P, -k);
  }
}

static std::vector<Divisor> degree2_subdivisors(const Divisor& E) {
  std::vector<Divisor> out;
  Divisor cur;
  subdivisors(E, 0, 2, cur, out);
  return out;
}

std::vector<TildePoint> fiber_tilde_points(CurveCtx& cm, const PencilRep& pen, const P1Val& tau) {
  Divisor E = pencil_fiber(cm, pen, tau);
  JAC3_CHECK(E.is_effective() && E.degree() == 4, "pencil fiber must be effective of degree four");
  std::vector<TildePoint> out;
  for (Divisor& d : degree2_subdivisors(E)) out.push_back(TildePoint{d, E - d, tau});
  return out;
}

std::vector<TildePoint> tilde_points_over(CurveCtx& cm, const PencilRep& pen) {
  JAC3_CHECK(cm.kb->card() <= (Big(1) << 20), "base field too large for a full parameter sweep");
  u64 n = cm.kb->card().convert_to<u64>();
  std::vector<TildePoint> out;
  for (u64 i = 0; i <= n; ++i) {
    P1Val tau = i < n ? P1Val{cm.kb->from_index(i), false} : P1Val{cm.kb->zero(), true};
    for (TildePoint& pt : fiber_tilde_points(cm, pen, tau)) out.push_back(std::move(pt));
  }
  return out;
}

static std::array<Fq, 3> cross3(const Pt3& a, const Pt3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Form3 line_through(CurveCtx& ctx, const Divisor& d) {
  JAC3_CHECK(d.is_effective() && d.degree() == 2, "line_through needs an effective degree-two divisor");
  const Level* kb = ctx.kb;
  std::array<Fq, 3> n{kb->zero(), kb->zero(), kb->zero()};
  if (d.terms.size() == 1 && d.terms[0].second == 2) {
    // doubled rational point: the tangent line, valid in every characteristic
    const Pt3& pt = d.terms[0].first.rep;
    for (u32 i = 0; i < 3; ++i) n[i] = ctx.F.partial(i).eval(pt.x, pt.y, pt.z);
  } else if (d.terms.size() == 1) {
    // conjugate pair forming one degree-two place: chord through the two conjugates
    JAC3_CHECK(d.terms[0].first.rdeg == 2, "single place of multiplicity one must have degree two");
    const Pt3& v = d.terms[0].first.rep;
    Pt3 vs = pt_frobenius(v, ctx.tw.base_deg() * ctx.w);
    auto c = cross3(v, vs);
    u32 lead = 3;
    for (u32 i = 0; i < 3 && lead == 3; ++i)
      if (!c[i].is_zero()) lead = i;
    JAC3_CHECK(lead < 3, "conjugate chord degenerated");
    Fq inv = c[lead].inv();
    for (u32 i = 0; i < 3; ++i) {
      auto down = ctx.tw.descend(c[i] * inv, kb);
      JAC3_CHECK(down.has_value(), "chord of a conjugate pair must be rational");
      n[i] = *down;
    }
  } else {
    // two distinct rational points: the chord
    JAC3_CHECK(d.terms.size() == 2, "unexpected divisor shape");
    auto c = cross3(d.terms[0].first.rep, d.terms[1].first.rep);
    n = c;
  }
  JAC3_CHECK(!(n[0].is_zero() && n[1].is_zero() && n[2].is_zero()), "degenerate line");
  Form3 L(kb, 1);
  L.set(1, 0, n[0]);
  L.set(0, 1, n[1]);
  L.set(0, 0, n[2]);
  for (const auto& [P, m] : d.terms)
    JAC3_CHECK(valuation_of_form(ctx, P, L) >= m, "line misses its prescribed contact");
  return L;
}

bool tilde_singular(CurveCtx& cm, const Divisor& a_m, const TildePoint& pt) {
  // the two tangent lines of the point coincide iff the effective representative
  // of d - a already lies on the line spanned by d
  Divisor e = unique_effective(cm, pt.d - a_m);
  Form3 L = line_through(cm, pt.d);
  Divisor DL = divisor_of_form(cm, L);
  return (DL - e).is_effective();
}

P1Val second_value(CurveCtx& cm, const PencilRep& minus_m, const TildePoint& pt) {
  Divisor K = canonical_divisor(cm);
  Divisor e = unique_effective(cm, K - pt.d) + unique_effective(cm, K - pt.dp);
  JAC3_CHECK(!e.terms.empty(), "residual divisor cannot be empty");
  P1Val v = pencil_value(cm, minus_m, e.terms[0].first);
  if (!v.inf && v.v.lv != cm.kb) {
    auto down = cm.tw.descend(v.v, cm.kb);
    JAC3_CHECK(down.has_value(), "second pencil parameter must lie in the working base");
    v.v = *down;
  }
  return v;
}

FiberCount fiber_count_exact(CurveCtx& cm, CurveCtx& c2m, const PencilRep& pen_m,
                             const PencilRep& pen_2m, const P1Val& tau) {
  JAC3_CHECK(c2m.w == 2 * cm.w, "second context must be the quadratic extension");
  FiberCount fc;
  Divisor E = pencil_fiber(cm, pen_m, tau);
  std::vector<Divisor> subs = degree2_subdivisors(E);
  fc.tilde = (i64)subs.size();
  i64 fixed = 0;
  for (const Divisor& d : subs)
    if (d * 2 == E) ++fixed;
  JAC3_CHECK((fc.tilde + fixed) % 2 == 0, "involution orbit count must be integral");
  fc.stable = (fc.tilde + fixed) / 2;
  // swapped points: conjugate pairs over the quadratic extension exchanged by Frobenius
  Divisor E2 = pencil_fiber(c2m, pen_2m, embed_p1(cm.tw, tau, c2m.kb));
  i64 sw = 0;
  for (const Divisor& d : degree2_subdivisors(E2)) {
    Divisor comp = E2 - d;
    if (!(d == comp) && sigma_divisor(c2m, d, cm.w) == comp) ++sw;
  }
  JAC3_CHECK(sw % 2 == 0, "swapped points must pair up");
  fc.swapped = sw / 2;
  return fc;
}

CoverCounts cover_counts(TrigonalData& td, u32 m) {
  CurveCtx& cm = td.ext(m);
  CurveCtx& c2m = td.ext(2 * m);
  const PencilRep& pm = td.plus_at(m);
  const PencilRep& p2m = td.plus_at(2 * m);
  const Level* kb = cm.kb;
  Poly<Fq> lc = embed_poly(cm.tw, td.gm.lc, kb);
  Poly<Fq> dsc = embed_poly(cm.tw, td.gm.disc, kb);
  BiPoly Pm = embed_bipoly(cm.tw, td.gm.P, kb);
  JAC3_CHECK(kb->card() <= (Big(1) << 24), "field too large for a fiberwise census");
  u64 n = kb->card().convert_to<u64>();
  CoverCounts cc;
  auto exact_at = [&](const P1Val& tau) {
    FiberCount fc = fiber_count_exact(cm, c2m, pm, p2m, tau);
    cc.tilde += fc.tilde;
    cc.quotient += fc.stable + fc.swapped;
  };
  for (u64 i = 0; i < n; ++i) {
    Fq v = kb->from_index(i);
    if (eval(lc, v).is_zero() || eval(dsc, v).is_zero()) {
      exact_at(P1Val{v, false});
      continue;
    }
    // unramified fiber with four distinct finite values: residue degrees match
    // the factorization pattern of the specialized quartic
    Poly<Fq> q = eval_at_x(Pm, v);
    JAC3_CHECK(q.deg() == 4, "specialized quartic lost degree at a good parameter");
    std::vector<int> pat;
    for (const FactorUnit& u : factorize(q, cm.seed)) {
      JAC3_CHECK(u.mult == 1, "good fiber must be separable");
      for (i64 j = 0; j < u.mult; ++j) pat.push_back(u.f.deg());
    }
    std::sort(pat.begin(), pat.end());
    if (pat == std::vector<int>{1, 1, 1, 1}) {
      cc.tilde += 6;
      cc.quotient += 3;
    } else if (pat == std::vector<int>{1, 1, 2}) {
      cc.tilde += 2;
      cc.quotient += 1;
    } else if (pat == std::vector<int>{2, 2}) {
      cc.tilde += 2;
      cc.quotient += 3;
    } else if (pat == std::vector<int>{1, 3}) {
      // nothing rational
    } else if (pat == std::vector<int>{4}) {
      cc.quotient += 1;
    } else {
      JAC3_CHECK(false, "impossible quartic pattern");
    }
  }
  exact_at(P1Val{kb->zero(), true});
  return cc;
}

std::optional<Poly<Fq>> fiber_quartic(CurveCtx& cm, const GonalModel& gm, const P1Val& tau) {
  const Level* kb = cm.kb;
  BiPoly Pm = embed_bipoly(cm.tw, gm.P, kb);
  JAC3_CHECK(Pm.deg() == 4, "quartic model expected");
  std::vector<Fq> q;
  if (tau.inf) {
    int dt = 0;
    for (int i = 0; i <= 4; ++i) dt = std::max(dt, Pm.coeff(i).deg());
    for (int i = 0; i <= 4; ++i) q.push_back(Pm.coeff(i).coeff(dt));
  } else {
    JAC3_CHECK(tau.v.lv == kb, "fiber parameter must live over the working base");
    for (int i = 0; i <= 4; ++i) q.push_back(eval(Pm.coeff(i), tau.v));
  }
  if (q[4].is_zero()) return std::nullopt;
  return make_monic(Poly<Fq>(kb->zero(), q));
}

BiPoly resolvent_bipoly(const GonalModel& gm) {
  const Poly<Fq> c0 = gm.P.coeff(0);
  const Poly<Fq> c1 = gm.P.coeff(1);
  const Poly<Fq> c2 = gm.P.coeff(2);
  const Poly<Fq> c3 = gm.P.coeff(3);
  const Poly<Fq> c4 = gm.P.coeff(4);
  const Level* lv = gm.lc.z.lv;
  auto x4 = [](const Poly<Fq>& f) {
    Poly<Fq> g = f + f;
    return g + g;
  };
  // partition invariants of the quartic, scaled by the leading coefficient to
  // clear denominators: roots are c4 (th_i th_j + th_k th_l)
  Poly<Fq> b2 = -c2;
  Poly<Fq> b1 = c3 * c1 - x4(c4 * c0);
  Poly<Fq> b0 = -(c3 * c3 * c0 - x4(c4 * c2 * c0) + c4 * c1 * c1);
  return BiPoly(Poly<Fq>(lv->zero()),
                {b0, b1, b2, Poly<Fq>::constant(lv->one())});
}

// f(u + t0) as an exact polynomial in u
static Poly<Fq> shift_poly(const Poly<Fq>& f, const Fq& t0) {
  const Level* lv = t0.lv;
  Poly<Fq> res(lv->zero());
  Poly<Fq> lin(lv->zero(), {t0, lv->one()});
  for (int i = f.deg(); i >= 0; --i) res = res * lin + Poly<Fq>::constant(f.coeff(i));
  return res;
}

// truncation of f(u + t0) as a power series in u
static Series<Fq> shifted_series(const Poly<Fq>& f, const Fq& t0, u32 prec) {
  const Level* lv = t0.lv;
  Series<Fq> acc(lv->zero(), prec);
  Series<Fq> lin = Series<Fq>::variable(lv->one(), prec);
  lin.c[0] = t0;
  for (int i = f.deg(); i >= 0; --i) {
    acc = acc * lin;
    acc.c[0] = acc.c[0] + f.coeff(i);
  }
  return acc;
}

bool cubic_has_closure_root(CurveCtx& ctx, const BiPoly& R) {
  Tower& tw = ctx.tw;
  JAC3_CHECK(R.deg() == 3 && R.coeff(3).is_one(), "monic cubic expected");
  Poly<Fq> dsc = resultant_y(R, d_dy(R));
  JAC3_CHECK(!dsc.is_zero(), "cubic discriminant vanishes identically");
  int bmax = 1;
  for (int i = 0; i <= 2; ++i) bmax = std::max(bmax, R.coeff(i).deg());
  u32 prec = (u32)bmax + 2;
  // a factor over the algebraic closure would have polynomial coefficients of
  // bounded degree in a cubic extension, hence already over the degree-six field;
  // lift each rational root of one good specialization and test it exactly
  for (u32 mult : {6u, 12u}) {
    const Level* L = tw.level(ctx.kb->deg * mult);
    Poly<Fq> dscL = embed_poly(tw, dsc, L);
    BiPoly RL = embed_bipoly(tw, R, L);
    u64 lim = (u64)dscL.deg() + 2;
    if (L->card() <= Big(lim)) continue;
    for (u64 i = 0; i < lim; ++i) {
      Fq t0 = L->from_index(i);
      if (eval(dscL, t0).is_zero()) continue;
      Poly<Fq> cubic = eval_at_x(RL, t0);
      JAC3_CHECK(cubic.deg() == 3, "specialization must stay cubic at a good parameter");
      std::vector<Poly<Fq>> shifted;
      for (int k = 0; k <= 3; ++k) shifted.push_back(shift_poly(RL.coeff(k), t0));
      for (const Fq& y0 : poly_roots(cubic, ctx.seed)) {
        std::vector<Series<Fq>> gc;
        for (int k = 0; k <= 3; ++k) gc.push_back(shifted_series(RL.coeff(k), t0, prec));
        Poly<Series<Fq>> G(Series<Fq>(L->zero(), prec), std::move(gc));
        Poly<Fq> cand(L->zero(), series_root(G, y0).c);
        Poly<Fq> acc = shifted[3];
        for (int k = 2; k >= 0; --k) acc = acc * cand + shifted[k];
        if (acc.is_zero()) return true;  // exact polynomial root: R factors
      }
      return false;
    }
  }
  throw error("no separable specialization of the cubic found");
}

bool resolvent_absolutely_irreducible(CurveCtx& ctx, const GonalModel& gm) {
  return !cubic_has_closure_root(ctx, resolvent_bipoly(gm));
}

std::array<Fq, 4> segre_point(Tower& tw, const Level* lv, const P1Val& t, const P1Val& tp) {
  Fq u0 = t.inf ? lv->zero() : lv->one();
  Fq u1 = t.inf ? lv->one() : tw.embed(t.v, lv);
  Fq v0 = tp.inf ? lv->zero() : lv->one();
  Fq v1 = tp.inf ? lv->one() : tw.embed(tp.v, lv);
  return {u0 * v0, u1 * v0, u0 * v1, u1 * v1};
}

void restricted_rows(CurveCtx& base, const std::vector<Fq>& row,
                     std::vector<std::vector<Fq>>& out) {
  JAC3_CHECK(!row.empty(), "empty row");
  const Level* L = row[0].lv;
  for (const Fq& e : row) JAC3_CHECK(e.lv == L, "row entries must share one level");
  u32 r = L->deg / base.kb->deg;
  std::vector<std::vector<Fq>> coords;
  for (const Fq& e : row) coords.push_back(kb_coords(base, e));
  for (u32 j = 0; j < r; ++j) {
    std::vector<Fq> line;
    for (const auto& cv : coords) line.push_back(cv[j]);
    out.push_back(std::move(line));
  }
}

u32 segre_rank(TrigonalData& td, u32 mmax) {
  CurveCtx& base = *td.ctx;
  std::vector<std::vector<Fq>> rows;
  u32 best = 0;
  for (u32 m = 1; m <= mmax; ++m) {
    CurveCtx& cm = td.ext(m);
    const PencilRep& pp = td.plus_at(m);
    const PencilRep& pmn = td.minus_at(m);
    JAC3_CHECK(cm.kb->card() <= (Big(1) << 20), "parameter sweep too large");
    u64 n = cm.kb->card().convert_to<u64>();
    for (u64 i = 0; i <= n; ++i) {
      P1Val tau = i < n ? P1Val{cm.kb->from_index(i), false} : P1Val{cm.kb->zero(), true};
      for (const TildePoint& pt : fiber_tilde_points(cm, pp, tau)) {
        P1Val tp = second_value(cm, pmn, pt);
        auto z = segre_point(cm.tw, cm.kb, pt.tau, tp);
        restricted_rows(base, {z[0], z[1], z[2], z[3]}, rows);
      }
      if (rows.size() < 4) continue;
      Mat<Fq> M(base.kb->zero(), (u32)rows.size(), 4);
      for (u32 ri = 0; ri < rows.size(); ++ri)
        for (u32 ci = 0; ci < 4; ++ci) M.at(ri, ci) = rows[ri][ci];
      best = std::max(best, rank(M));
      if (best == 4) return 4;
    }
  }
  return best;
}

static PencilRep build_plus(CurveCtx& c, const Divisor& a0) {
  JAC3_CHECK(a0.degree() == 0, "twisting class must have degree zero");
  if (is_principal(c, a0)) throw error("degenerate class: a is principal");
  auto p = make_pencil(c, canonical_divisor(c) + a0);
  if (!p) throw error("degenerate class: the plus pencil has a base point");
  return *p;
}

static PencilRep build_minus(CurveCtx& c, const Divisor& a0) {
  auto p = make_pencil(c, canonical_divisor(c) - a0);
  if (!p) throw error("degenerate class: the minus pencil has a base point");
  return *p;
}

TrigonalData::TrigonalData(CurveCtx& c, const Divisor& a0)
    : ctx(&c),
      a(a0),
      plus(build_plus(c, a0)),
      minus(build_minus(c, a0)),
      gm(gonal_model(c, plus)),
      resolvent(resolvent_bipoly(gm)) {}

CurveCtx& TrigonalData::ext(u32 m) {
  JAC3_CHECK(m >= 1 && m <= 64, "extension degree out of range");
  if (m == 1) return *ctx;
  auto it = exts_.find(m);
  if (it == exts_.end())
    it = exts_.emplace(m, std::make_unique<CurveCtx>(ctx->tw, ctx->F, ctx->w * m, ctx->seed)).first;
  return *it->second;
}

const PencilRep& TrigonalData::plus_at(u32 m) {
  if (m == 1) return plus;
  auto it = plus_m_.find(m);
  if (it == plus_m_.end()) it = plus_m_.emplace(m, transfer_pencil(*ctx, ext(m), plus)).first;
  return it->second;
}

const PencilRep& TrigonalData::minus_at(u32 m) {
  if (m == 1) return minus;
  auto it = minus_m_.find(m);
  if (it == minus_m_.end()) it = minus_m_.emplace(m, transfer_pencil(*ctx, ext(m), minus)).first;
  return it->second;
}

const Divisor& TrigonalData::a_at(u32 m) {
  if (m == 1) return a;
  auto it = a_m_.find(m);
  if (it == a_m_.end()) it = a_m_.emplace(m, transfer_divisor(*ctx, ext(m), a)).first;
  return it->second;
}

}  // namespace jac3
