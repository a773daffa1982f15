#include "jac3/gonal.hpp"

#include <algorithm>

#include "jac3/linalg.hpp"

namespace jac3 {

bool p1_eq(const P1Val& a, const P1Val& b) {
  if (a.inf || b.inf) return a.inf == b.inf;
  return a.v == b.v;
}

std::string p1_repr(const P1Val& a) { return a.inf ? "inf" : fq_repr(a.v); }

std::optional<PencilRep> make_pencil(CurveCtx& ctx, const Divisor& Wrep) {
  RRBasis B = rr_space(ctx, Wrep);
  JAC3_CHECK(B.dim() == 2, "pencil requires a two-dimensional system");
  PencilRep pen{Wrep, B.den, B.nums[0], B.nums[1], Divisor{}, Divisor{}, Divisor{}};
  pen.divh = divisor_of_form(ctx, pen.h);
  pen.E0 = divisor_of_form(ctx, pen.g1) - pen.divh + Wrep;
  pen.Einf = divisor_of_form(ctx, pen.g0) - pen.divh + Wrep;
  JAC3_CHECK(pen.E0.is_effective() && pen.E0.degree() == 4, "zero fiber must be effective");
  JAC3_CHECK(pen.Einf.is_effective() && pen.Einf.degree() == 4,
             "infinity fiber must be effective");
  if (!divisor_gcd(pen.E0, pen.Einf).is_zero()) return std::nullopt;
  return pen;
}

P1Val ratio_value(CurveCtx& ctx, const Place& P, const Form3& num, const Form3& den) {
  JAC3_CHECK(num.d == den.d, "ratio of forms of different degrees");
  for (u32 prec = 8; prec <= 512; prec *= 2) {
    Series<Fq> sn = form_series_at(ctx, P, num, prec);
    Series<Fq> sd = form_series_at(ctx, P, den, prec);
    u32 vn = sn.valuation(), vd = sd.valuation();
    if (vn >= prec && vd >= prec) continue;
    if (vn < vd) return P1Val{P.rep.x.lv->zero(), true};  // num/den... den wins
    if (vn > vd) return P1Val{P.rep.x.lv->zero(), false};
    return P1Val{sn.c[vn] / sd.c[vd], false};
  }
  throw error("both forms vanish to excessive order at the place");
}

P1Val pencil_value(CurveCtx& ctx, const PencilRep& pen, const Place& P) {
  return ratio_value(ctx, P, pen.g1, pen.g0);
}

Divisor pencil_fiber(CurveCtx& ctx, const PencilRep& pen, const P1Val& tau) {
  if (tau.inf) return pen.Einf;
  JAC3_CHECK(tau.v.lv == ctx.kb, "fiber parameter must live over the working base");
  Form3 G = pen.g1 + pen.g0.scale(-tau.v);
  Divisor D = divisor_of_form(ctx, G) - pen.divh + pen.W;
  JAC3_CHECK(D.is_effective() && D.degree() == 4, "fiber must be effective of degree four");
  return D;
}

PencilRep transfer_pencil(CurveCtx& src, CurveCtx& dst, const PencilRep& pen) {
  PencilRep out{transfer_divisor(src, dst, pen.W),
                base_change(src.tw, pen.h, dst.kb),
                base_change(src.tw, pen.g0, dst.kb),
                base_change(src.tw, pen.g1, dst.kb),
                transfer_divisor(src, dst, pen.divh),
                transfer_divisor(src, dst, pen.E0),
                transfer_divisor(src, dst, pen.Einf)};
  return out;
}

namespace {

struct ThetaSample {
  const Level* L;  // residue level
  u32 rdeg;
  Fq tau;    // finite pencil value
  Fq theta;  // finite coordinate value
};

// rows of the relation matrix for coefficients c_{ij}, i <= 4, j <= bt
void sample_rows(CurveCtx& ctx, const std::vector<ThetaSample>& samples, u32 bt,
                 std::vector<std::vector<Fq>>& rows) {
  rows.clear();
  u32 cols = 5 * (bt + 1);
  for (const ThetaSample& s : samples) {
    std::vector<Fq> vals(cols, s.L->zero());
    Fq tp = s.L->one();
    std::vector<Fq> tpow, thpow;
    for (u32 j = 0; j <= bt; ++j) {
      tpow.push_back(tp);
      tp = tp * s.tau;
    }
    Fq hp = s.L->one();
    for (u32 i = 0; i <= 4; ++i) {
      thpow.push_back(hp);
      hp = hp * s.theta;
    }
    for (u32 i = 0; i <= 4; ++i)
      for (u32 j = 0; j <= bt; ++j) vals[i * (bt + 1) + j] = thpow[i] * tpow[j];
    std::vector<std::vector<Fq>> sub(s.rdeg, std::vector<Fq>(cols, ctx.kb->zero()));
    for (u32 c = 0; c < cols; ++c) {
      std::vector<Fq> co = kb_coords(ctx, vals[c]);
      for (u32 r = 0; r < s.rdeg; ++r) sub[r][c] = co[r];
    }
    for (auto& r : sub) rows.push_back(std::move(r));
  }
}

BiPoly kernel_to_bipoly(const Level* kb, const std::vector<Fq>& v, u32 bt) {
  BiPoly P = bi_zero(kb);
  for (u32 i = 0; i <= 4; ++i)
    for (u32 j = 0; j <= bt; ++j) {
      const Fq& co = v[i * (bt + 1) + j];
      if (!co.is_zero()) P = P + bi_monomial(co, j, i);  // inner t^j, outer T^i
    }
  return P;
}

// symbolic check: P(theta, t) vanishes identically on the curve
bool verify_relation(CurveCtx& ctx, const BiPoly& P, const Form3& tn, const Form3& td,
                     const PencilRep& pen) {
  BiPoly f = ctx.F.chart_z();
  BiPoly nc = tn.chart_z(), dc = td.chart_z();
  BiPoly r1 = pen.g1.chart_z(), r0 = pen.g0.chart_z();
  u32 bt = (u32)std::max(0, deg_x(P));
  // numerator of P(num/den, r1/r0) cleared by den^4 r0^bt
  BiPoly acc = bi_zero(ctx.kb);
  std::vector<BiPoly> np{bi_const(ctx.kb->one())}, dp = np, r1p = np, r0p = np;
  for (u32 k = 1; k <= 4; ++k) {
    np.push_back(np.back() * nc);
    dp.push_back(dp.back() * dc);
  }
  for (u32 k = 1; k <= bt; ++k) {
    r1p.push_back(r1p.back() * r1);
    r0p.push_back(r0p.back() * r0);
  }
  for (u32 i = 0; i <= 4; ++i) {
    if (P.deg() < (int)i) break;
    const Poly<Fq>& ci = P.c[i];
    for (u32 j = 0; j <= bt; ++j) {
      Fq co = ci.coeff((int)j);
      if (co.is_zero()) continue;
      acc = acc + bi_const(co) * np[i] * dp[4 - i] * r1p[j] * r0p[bt - j];
    }
  }
  if (acc.is_zero()) return false;
  return divides_mod_x_units(f, acc);
}

}  // namespace

GonalModel gonal_model(CurveCtx& ctx, const PencilRep& pen) {
  const Level* kb = ctx.kb;
  // candidate coordinates theta = num / den
  std::vector<std::pair<Form3, Form3>> cands;
  auto lin = [&](u32 i, u32 j) {
    Form3 l(kb, 1);
    l.set(i, j, kb->one());
    return l;
  };
  Form3 X = lin(1, 0), Y = lin(0, 1), Z = lin(0, 0);
  cands.push_back({X, Z});
  cands.push_back({Y, Z});
  u64 extra = std::min<u64>((u64)kb->card() - 1, 6);
  for (u64 c = 1; c <= extra; ++c) {
    Form3 l = X + Y.scale(kb->from_index(c));
    cands.push_back({l, Z});
  }
  cands.push_back({X + Z, Y});
  cands.push_back({Y + Z, X});

  for (const auto& cand : cands) {
    // gather samples with finite t and theta
    std::vector<ThetaSample> samples;
    u32 rowcount = 0;
    for (u32 r = 1; r <= 6 && rowcount < 70; ++r) {
      for (const Place& P : places_of_degree(ctx, r)) {
        P1Val tv = pencil_value(ctx, pen, P);
        if (tv.inf) continue;
        P1Val th = ratio_value(ctx, P, cand.first, cand.second);
        if (th.inf) continue;
        samples.push_back(ThetaSample{P.rep.x.lv, P.rdeg, tv.v, th.v});
        rowcount += P.rdeg;
        if (rowcount >= 70) break;
      }
    }
    if (rowcount < 40) continue;

    for (u32 bt = 0; bt <= 4; ++bt) {
      std::vector<std::vector<Fq>> rows;
      sample_rows(ctx, samples, bt, rows);
      Mat<Fq> M(kb->zero(), (u32)rows.size(), 5 * (bt + 1));
      for (u32 r = 0; r < rows.size(); ++r)
        for (u32 cc = 0; cc < M.cols; ++cc) M.at(r, cc) = rows[r][cc];
      std::vector<std::vector<Fq>> ker = kernel(M);
      if (ker.empty()) continue;  // raise the t-degree bound
      if (ker.size() > 1) break;  // relation not unique: coordinate is not primitive
      BiPoly P = kernel_to_bipoly(kb, ker[0], bt);
      if (P.deg() != 4) break;  // coordinate generates a proper subfield
      if (!verify_relation(ctx, P, cand.first, cand.second, pen)) break;
      BiPoly dP = d_dy(P);
      if (dP.is_zero()) break;
      Poly<Fq> disc = resultant_y(P, dP);
      if (disc.deg() < 0) break;
      GonalModel gm{cand.first, cand.second, P, P.c[4], disc};
      return gm;
    }
  }
  throw error("no coordinate generates the function field over the pencil");
}

P1Val theta_value(CurveCtx& ctx, const GonalModel& gm, const Place& P) {
  return ratio_value(ctx, P, gm.theta_num, gm.theta_den);
}

Poly<Fq> resolvent_of_quartic(const Poly<Fq>& quartic) {
  JAC3_CHECK(quartic.deg() == 4, "resolvent needs a quartic");
  const Level* lv = quartic.z.lv;
  Poly<Fq> m = make_monic(quartic);
  Fq c0 = m.coeff(0), c1 = m.coeff(1), c2 = m.coeff(2), c3 = m.coeff(3);
  Fq four = lv->from_int(4);
  std::vector<Fq> rc{-(c3 * c3 * c0 + c1 * c1 - four * c2 * c0), c3 * c1 - four * c0, -c2,
                     lv->one()};
  return Poly<Fq>(lv->zero(), rc);
}

}  // namespace jac3
