#include "jac3/branch.hpp"

#include <algorithm>
#include <numeric>

#include "jac3/factor.hpp"

namespace jac3 {

std::vector<i64> divisor_profile(const Divisor& fiber) {
  std::vector<i64> prof;
  for (const auto& [P, m] : fiber.terms)
    for (u32 i = 0; i < P.rdeg; ++i) prof.push_back(m);
  std::sort(prof.rbegin(), prof.rend());
  return prof;
}

bool orbit_even(const BranchOrbit& bo) {
  for (i64 m : bo.profile)
    if (m % 2 != 0) return false;
  return true;
}

// form whose divisor is the sum of the fibers over the roots of f plus
// deg f copies of div(h) - W: the homogenized f applied to (g1 : g0)
static Form3 orbit_form(const PencilRep& pen, const Poly<Fq>& f) {
  const Level* lv = pen.g0.lv;
  JAC3_CHECK(pen.g0.d == pen.g1.d, "pencil basis forms must share a degree");
  u32 r = (u32)f.deg();
  std::vector<Form3> p0(r + 1), p1(r + 1);
  p0[0] = Form3(lv, 0);
  p0[0].set(0, 0, lv->one());
  p1[0] = p0[0];
  for (u32 i = 1; i <= r; ++i) {
    p0[i] = p0[i - 1] * pen.g0;
    p1[i] = p1[i - 1] * pen.g1;
  }
  Form3 N(lv, pen.g0.d * r);
  for (u32 i = 0; i <= r; ++i) {
    Fq fi = f.coeff((int)i);
    if (fi.is_zero()) continue;
    N = N + (p1[i] * p0[r - i]).scale(fi);
  }
  return N;
}

std::vector<BranchOrbit> branch_orbits(TrigonalData& td) {
  CurveCtx& c = *td.ctx;
  const PencilRep& pen = td.plus;
  Poly<Fq> crit = td.gm.disc * td.gm.lc;
  std::vector<BranchOrbit> out;
  for (const FactorUnit& u : factorize(crit, c.seed)) {
    BranchOrbit bo(u.f);
    bo.r = (u32)u.f.deg();
    if (bo.r > 12) {
      // a ramified orbit of a degree-four map on a genus-three curve puts at
      // least r into the degree-twelve different, so this orbit is unramified
      bo.profile = {1, 1, 1, 1};
      out.push_back(std::move(bo));
      continue;
    }
    bo.sum = divisor_of_form(c, orbit_form(pen, u.f)) - (pen.divh - pen.W) * (i64)bo.r;
    JAC3_CHECK(bo.sum.is_effective() && bo.sum.degree() == 4 * (i64)bo.r,
               "orbit fiber sum must be effective of degree four per fiber");
    for (const auto& [P, m] : bo.sum.terms) {
      JAC3_CHECK(P.rdeg % bo.r == 0, "fiber place must contain its branch parameter");
      for (u32 i = 0; i < P.rdeg / bo.r; ++i) bo.profile.push_back(m);
    }
    std::sort(bo.profile.rbegin(), bo.profile.rend());
    JAC3_CHECK(std::accumulate(bo.profile.begin(), bo.profile.end(), (i64)0) == 4,
               "fiber profile must sum to the map degree");
    out.push_back(std::move(bo));
  }
  BranchOrbit binf(Poly<Fq>(c.kb->zero()));
  binf.inf = true;
  binf.sum = pen.Einf;
  binf.profile = divisor_profile(pen.Einf);
  out.push_back(std::move(binf));
  return out;
}

P1Val orbit_parameter(TrigonalData& td, const BranchOrbit& bo) {
  if (bo.inf) return P1Val{td.ctx->kb->zero(), true};
  CurveCtx& cr = td.ext(bo.r);
  std::vector<Fq> roots = poly_roots(embed_poly(td.ctx->tw, bo.factor, cr.kb), cr.seed);
  JAC3_CHECK(roots.size() == bo.r, "branch factor must split in its degree extension");
  return P1Val{*std::min_element(roots.begin(), roots.end(), FqLess{}), false};
}

std::optional<SigmaPrimeWitness> sigma_prime_test(TrigonalData& td) {
  for (const BranchOrbit& bo : branch_orbits(td)) {
    if (!orbit_even(bo)) continue;
    P1Val tau = orbit_parameter(td, bo);
    CurveCtx& cr = td.ext(bo.r);
    Divisor fib = pencil_fiber(cr, td.plus_at(bo.r), tau);
    Divisor half;
    for (const auto& [P, m] : fib.terms) {
      JAC3_CHECK(m % 2 == 0, "even orbit must carry an even fiber");
      half.add(P, m / 2);
    }
    JAC3_CHECK(is_principal(cr, half * 2 - canonical_divisor(cr) - td.a_at(bo.r)),
               "half fiber must double to the system class");
    return SigmaPrimeWitness{bo.r, tau, half};
  }
  return std::nullopt;
}

std::optional<SigmaDoubleWitness> sigma_doubleprime_test(CurveCtx& ctx, const Divisor& a, u32) {
  JAC3_CHECK(a.degree() == 0, "class must have degree zero");
  if (is_principal(ctx, a)) {
    // the zero class is the diagonal case a ~ p - p
    for (u32 r = 1; r <= 4; ++r) {
      const auto& pl = places_of_degree(ctx, r);
      if (pl.empty()) continue;
      Divisor p;
      p.add(pl[0], 1);
      return SigmaDoubleWitness{1, p, p};
    }
    JAC3_CHECK(false, "curve must have a place of degree at most four");
  }
  Divisor K = canonical_divisor(ctx);
  RRBasis B = rr_space(ctx, K + a);
  JAC3_CHECK(B.dim() == 2, "plus system must be a pencil");
  Divisor dh = divisor_of_form(ctx, B.den);
  Divisor E0 = divisor_of_form(ctx, B.nums[1]) - dh + K + a;
  Divisor Einf = divisor_of_form(ctx, B.nums[0]) - dh + K + a;
  Divisor bas = divisor_gcd(E0, Einf);
  if (bas.is_zero()) return std::nullopt;
  // a base point p of |K + a| forces h0(p - a) = 1, so a ~ p - q exactly
  const Place& P = bas.terms[0].first;
  u32 r = P.rdeg;
  CurveCtx cr(ctx.tw, ctx.F, ctx.w * r, ctx.seed);
  std::vector<Place> lifted = transfer_place(ctx, cr, P);
  JAC3_CHECK(!lifted.empty() && lifted[0].rdeg == 1, "base place must split into points");
  Divisor p;
  p.add(lifted[0], 1);
  Divisor q = unique_effective(cr, p - transfer_divisor(ctx, cr, a));
  JAC3_CHECK(q.degree() == 1, "difference witness must be a point");
  return SigmaDoubleWitness{r, p, q};
}

// first even orbit, materialized: its representative fiber with tilde points
static std::optional<std::pair<u32, std::vector<TildePoint>>> even_fiber_points(TrigonalData& td) {
  for (const BranchOrbit& bo : branch_orbits(td)) {
    if (!orbit_even(bo)) continue;
    P1Val tau = orbit_parameter(td, bo);
    CurveCtx& cr = td.ext(bo.r);
    return std::make_pair(bo.r, fiber_tilde_points(cr, td.plus_at(bo.r), tau));
  }
  return std::nullopt;
}

std::optional<SingularPoint> tilde_smooth_probe(TrigonalData& td) {
  // a singular pair forces its two contact lines to coincide; with difference
  // classes excluded before the model exists, the supports are disjoint and
  // the pair is a fixed point on a doubled fiber, so even orbits are complete
  auto hit = even_fiber_points(td);
  if (!hit) return std::nullopt;
  const Divisor& ar = td.a_at(hit->first);
  CurveCtx& cr = td.ext(hit->first);
  for (const TildePoint& pt : hit->second)
    if (tilde_singular(cr, ar, pt)) return SingularPoint{hit->first, pt};
  JAC3_CHECK(false, "doubled fiber must carry a singular point");
  return std::nullopt;
}

bool iota_free_probe(TrigonalData& td) {
  auto hit = even_fiber_points(td);
  if (!hit) return true;
  for (const TildePoint& pt : hit->second)
    if (pt.d == pt.dp) return false;
  JAC3_CHECK(false, "doubled fiber must carry a fixed point");
  return true;
}

i64 ramification_total(TrigonalData& td) {
  JAC3_CHECK(td.ctx->kb->p >= 5, "tame ramification count requires characteristic at least five");
  i64 total = 0;
  for (const BranchOrbit& bo : branch_orbits(td)) {
    i64 c = 0;
    if (bo.profile == std::vector<i64>{1, 1, 1, 1}) c = 0;
    else if (bo.profile == std::vector<i64>{2, 1, 1}) c = 1;
    else if (bo.profile == std::vector<i64>{3, 1}) c = 2;
    else JAC3_CHECK(false, "doubled fiber in the ramification count: degenerate class");
    total += (i64)bo.r * c;
  }
  return total;
}

}  // namespace jac3
