#include "jac3/curve.hpp"

#include <algorithm>
#include <numeric>

#include "jac3/factor.hpp"

namespace jac3 {

// ---------- Form3 ----------

Fq Form3::eval(const Fq& x, const Fq& y, const Fq& z) const {
  // power tables up to d
  std::vector<Fq> px{lv->one()}, py{lv->one()}, pz{lv->one()};
  for (u32 k = 1; k <= d; ++k) {
    px.push_back(px.back() * x);
    py.push_back(py.back() * y);
    pz.push_back(pz.back() * z);
  }
  Fq acc = lv->zero();
  for (u32 i = 0; i + 0 <= d; ++i)
    for (u32 j = 0; i + j <= d; ++j) {
      const Fq& co = get(i, j);
      if (co.is_zero()) continue;
      acc = acc + co * px[i] * py[j] * pz[d - i - j];
    }
  return acc;
}

Form3 Form3::partial(u32 var) const {
  JAC3_CHECK(d >= 1, "partial of a constant form");
  Form3 r(lv, d - 1);
  for (u32 i = 0; i + 0 <= d; ++i)
    for (u32 j = 0; i + j <= d; ++j) {
      const Fq& co = get(i, j);
      if (co.is_zero()) continue;
      u32 k = d - i - j;
      u32 e = var == 0 ? i : var == 1 ? j : k;
      if (e == 0) continue;
      Fq m = lv->from_int((i64)e) * co;
      if (m.is_zero()) continue;
      if (var == 0) r.set(i - 1, j, r.get(i - 1, j) + m);
      else if (var == 1) r.set(i, j - 1, r.get(i, j - 1) + m);
      else r.set(i, j, r.get(i, j) + m);
    }
  return r;
}

Form3 Form3::operator+(const Form3& o) const {
  JAC3_CHECK(d == o.d && lv == o.lv, "form degree/level mismatch");
  Form3 r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i] + o.c[i];
  return r;
}
Form3 Form3::operator-() const {
  Form3 r = *this;
  for (Fq& e : r.c) e = -e;
  return r;
}
Form3 Form3::operator*(const Form3& o) const {
  JAC3_CHECK(lv == o.lv, "form level mismatch");
  Form3 r(lv, d + o.d);
  for (u32 i = 0; i <= d; ++i)
    for (u32 j = 0; i + j <= d; ++j) {
      const Fq& a = get(i, j);
      if (a.is_zero()) continue;
      for (u32 i2 = 0; i2 <= o.d; ++i2)
        for (u32 j2 = 0; i2 + j2 <= o.d; ++j2) {
          const Fq& b = o.get(i2, j2);
          if (b.is_zero()) continue;
          r.set(i + i2, j + j2, r.get(i + i2, j + j2) + a * b);
        }
    }
  return r;
}
Form3 Form3::scale(const Fq& s) const {
  Form3 r = *this;
  for (Fq& e : r.c) e = e * s;
  return r;
}

BiPoly Form3::chart_z() const {
  BiPoly f = bi_zero(lv);
  for (u32 j = 0; j <= d; ++j) {
    Poly<Fq> row(lv->zero());
    for (u32 i = 0; i + j <= d; ++i) row.c.push_back(get(i, j));
    row.norm();
    f.c.push_back(row);
  }
  f.norm();
  return f;
}
BiPoly Form3::chart_y() const {
  BiPoly f = bi_zero(lv);
  for (u32 k = 0; k <= d; ++k) {  // z-exponent is the outer variable
    Poly<Fq> row(lv->zero());
    for (u32 i = 0; i + k <= d; ++i) row.c.push_back(get(i, d - i - k));
    row.norm();
    f.c.push_back(row);
  }
  f.norm();
  return f;
}
BiPoly Form3::chart_x() const {
  BiPoly f = bi_zero(lv);
  for (u32 k = 0; k <= d; ++k) {
    Poly<Fq> row(lv->zero());
    for (u32 j = 0; j + k <= d; ++j) row.c.push_back(get(d - j - k, j));
    row.norm();
    f.c.push_back(row);
  }
  f.norm();
  return f;
}

Form3 Form3::from_chart_z(const BiPoly& f, u32 degree) {
  const Level* lv = f.z.z.lv;
  Form3 r(lv, degree);
  for (int j = 0; j <= f.deg(); ++j)
    for (int i = 0; i <= f.c[j].deg(); ++i) {
      if (f.c[j].c[i].is_zero()) continue;
      JAC3_CHECK((u32)(i + j) <= degree, "chart polynomial exceeds form degree");
      r.set(i, j, f.c[j].c[i]);
    }
  return r;
}

Form3 base_change(const Tower& tw, const Form3& F, const Level* to) {
  if (F.lv == to) return F;
  Form3 r(to, F.d);
  for (size_t i = 0; i < F.c.size(); ++i) r.c[i] = tw.embed(F.c[i], to);
  return r;
}

// ---------- points ----------

void Pt3::normalize() {
  const Level* lv = x.lv;
  Fq* coords[3] = {&x, &y, &z};
  for (Fq* co : coords) {
    if (co->is_zero()) continue;
    Fq s = co->inv();
    x = x * s;
    y = y * s;
    z = z * s;
    return;
  }
  JAC3_CHECK(false, "zero vector is not a projective point");
  (void)lv;
}

bool pt_eq(const Pt3& a, const Pt3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
bool pt_less(const Pt3& a, const Pt3& b) {
  if (a.x != b.x) return elem_less(a.x, b.x);
  if (a.y != b.y) return elem_less(a.y, b.y);
  return elem_less(a.z, b.z);
}
Pt3 pt_frobenius(const Pt3& P, u32 times) {
  return Pt3{frobenius(P.x, times), frobenius(P.y, times), frobenius(P.z, times)};
}
std::string pt_repr(const Pt3& P) {
  return "(" + fq_repr(P.x) + ":" + fq_repr(P.y) + ":" + fq_repr(P.z) + ")";
}

bool place_eq(const Place& a, const Place& b) { return a.rdeg == b.rdeg && pt_eq(a.rep, b.rep); }
bool place_less(const Place& a, const Place& b) {
  if (a.rdeg != b.rdeg) return a.rdeg < b.rdeg;
  return pt_less(a.rep, b.rep);
}
std::string place_repr(const Place& P) {
  return "d" + std::to_string(P.rdeg) + pt_repr(P.rep);
}

// ---------- divisors ----------

void Divisor::add(const Place& P, i64 m) {
  if (m == 0) return;
  auto it = std::lower_bound(terms.begin(), terms.end(), P,
                             [](const auto& t, const Place& v) { return place_less(t.first, v); });
  if (it != terms.end() && place_eq(it->first, P)) {
    it->second += m;
    if (it->second == 0) terms.erase(it);
  } else {
    terms.insert(it, {P, m});
  }
}
i64 Divisor::mult_of(const Place& P) const {
  for (const auto& t : terms)
    if (place_eq(t.first, P)) return t.second;
  return 0;
}
i64 Divisor::degree() const {
  i64 s = 0;
  for (const auto& t : terms) s += t.second * (i64)t.first.rdeg;
  return s;
}
bool Divisor::is_effective() const {
  for (const auto& t : terms)
    if (t.second < 0) return false;
  return true;
}
Divisor Divisor::operator+(const Divisor& o) const {
  Divisor r = *this;
  for (const auto& t : o.terms) r.add(t.first, t.second);
  return r;
}
Divisor Divisor::operator-(const Divisor& o) const {
  Divisor r = *this;
  for (const auto& t : o.terms) r.add(t.first, -t.second);
  return r;
}
Divisor Divisor::operator*(i64 k) const {
  Divisor r;
  if (k == 0) return r;
  r = *this;
  for (auto& t : r.terms) t.second *= k;
  return r;
}
bool Divisor::operator==(const Divisor& o) const {
  if (terms.size() != o.terms.size()) return false;
  for (size_t i = 0; i < terms.size(); ++i)
    if (!place_eq(terms[i].first, o.terms[i].first) || terms[i].second != o.terms[i].second)
      return false;
  return true;
}
std::string divisor_repr(const Divisor& D) {
  std::string s;
  for (const auto& t : D.terms) {
    if (!s.empty()) s += " + ";
    s += std::to_string(t.second) + "*" + place_repr(t.first);
  }
  return s.empty() ? "0" : s;
}
Divisor divisor_gcd(const Divisor& A, const Divisor& B) {
  Divisor r;
  for (const auto& t : A.terms) {
    if (t.second <= 0) continue;
    i64 mb = B.mult_of(t.first);
    i64 m = std::min(t.second, mb);
    if (m > 0) r.add(t.first, m);
  }
  return r;
}

// ---------- curve context ----------

CurveCtx::CurveCtx(Tower& tower, const Form3& form, u32 ext, u64 sd)
    : tw(tower), w(ext), kb(tower.level(tower.base_deg() * ext)), F(form), seed(sd) {
  JAC3_CHECK(form.d >= 1, "curve needs a positive-degree form");
  F = base_change(tw, form, kb);
  JAC3_CHECK(!F.is_zero(), "zero form is not a curve");
}

const Level* CurveCtx::level_of(u32 rdeg) { return tw.level(tw.base_deg() * w * rdeg); }

const Form3& CurveCtx::F_at(const Level* L) {
  auto it = f_lift.find(L->deg);
  if (it != f_lift.end()) return it->second;
  return f_lift.emplace(L->deg, base_change(tw, F, L)).first->second;
}

bool CurveCtx::on_curve(const Pt3& P) {
  const Form3& FL = F_at(P.x.lv);
  return FL.eval(P.x, P.y, P.z).is_zero();
}

Fq CurveCtx::sigma_coord(const Fq& e, u32 j) const { return frobenius(e, tw.base_deg() * j); }

u32 CurveCtx::point_degree(const Pt3& P) const {
  u32 step = tw.base_deg() * w;
  u32 bound = P.x.lv->deg / step;
  JAC3_CHECK(P.x.lv->deg % step == 0, "point level incompatible with working base");
  Pt3 Q = pt_frobenius(P, step);
  u32 r = 1;
  while (!pt_eq(Q, P)) {
    Q = pt_frobenius(Q, step);
    ++r;
    JAC3_CHECK(r <= bound, "frobenius orbit failed to close");
  }
  return r;
}

Place make_place(CurveCtx& ctx, const Pt3& P0) {
  Pt3 P = P0;
  P.normalize();
  u32 step = ctx.tw.base_deg() * ctx.w;
  u32 r = ctx.point_degree(P);
  const Level* Lmin = ctx.level_of(r);
  if (P.x.lv != Lmin) {
    auto dx = ctx.tw.descend(P.x, Lmin);
    auto dy = ctx.tw.descend(P.y, Lmin);
    auto dz = ctx.tw.descend(P.z, Lmin);
    JAC3_CHECK(dx && dy && dz, "point does not descend to its minimal level");
    P = Pt3{*dx, *dy, *dz};
  }
  Pt3 best = P, Q = P;
  for (u32 i = 1; i < r; ++i) {
    Q = pt_frobenius(Q, step);
    if (pt_less(Q, best)) best = Q;
  }
  return Place{r, best};
}

Place sigma_place(CurveCtx& ctx, const Place& P, u32 j) {
  Pt3 Q = pt_frobenius(P.rep, ctx.tw.base_deg() * j);
  return make_place(ctx, Q);
}

Divisor sigma_divisor(CurveCtx& ctx, const Divisor& D, u32 j) {
  Divisor r;
  for (const auto& t : D.terms) r.add(sigma_place(ctx, t.first, j), t.second);
  return r;
}

std::vector<Place> transfer_place(CurveCtx& src, CurveCtx& dst, const Place& P) {
  JAC3_CHECK(&src.tw == &dst.tw && dst.w % src.w == 0, "incompatible base change");
  u32 step = src.tw.base_deg() * src.w;
  // embed every geometric point of the orbit into a level over the new base
  u32 r = P.rdeg;
  u32 lift = (u32)std::lcm((u64)src.w * r, (u64)dst.w) / (src.w * r);
  const Level* L = src.tw.level(step * r * lift);
  std::vector<Place> out;
  Pt3 Q{src.tw.embed(P.rep.x, L), src.tw.embed(P.rep.y, L), src.tw.embed(P.rep.z, L)};
  for (u32 i = 0; i < r; ++i) {
    Place np = make_place(dst, Q);
    bool seen = false;
    for (const Place& e : out) seen = seen || place_eq(e, np);
    if (!seen) out.push_back(np);
    Q = pt_frobenius(Q, step);
  }
  std::sort(out.begin(), out.end(), place_less);
  return out;
}

Divisor transfer_divisor(CurveCtx& src, CurveCtx& dst, const Divisor& D) {
  Divisor r;
  for (const auto& t : D.terms)
    for (const Place& np : transfer_place(src, dst, t.first)) r.add(np, t.second);
  return r;
}

// ---------- point enumeration ----------

std::vector<Pt3> points_over(CurveCtx& ctx, u32 m) {
  const Level* L = ctx.level_of(m);
  JAC3_CHECK(L->card() <= Big(1) << 24, "point enumeration over a field this large");
  u64 card = (u64)L->card();
  const Form3& FL = ctx.F_at(L);
  BiPoly f = FL.chart_z();
  std::vector<Pt3> pts;
  for (u64 i = 0; i < card; ++i) {
    Fq x0 = L->from_index(i);
    Poly<Fq> fy = eval_at_x(f, x0);
    if (fy.is_zero()) continue;  // would be a line component; excluded elsewhere
    for (const Fq& y0 : linear_roots(L, fy.c, ctx.seed)) {
      Pt3 P{x0, y0, L->one()};
      P.normalize();
      pts.push_back(P);
    }
  }
  // line at infinity: roots of F(x, 1, 0), then the point (1 : 0 : 0)
  Poly<Fq> b1(L->zero());
  for (u32 i = 0; i <= FL.d; ++i) b1.c.push_back(FL.get(i, FL.d - i));
  b1.norm();
  if (!b1.is_zero())
    for (const Fq& x0 : linear_roots(L, b1.c, ctx.seed)) {
      Pt3 P{x0, L->one(), L->zero()};
      P.normalize();
      pts.push_back(P);
    }
  if (FL.get(FL.d, 0).is_zero()) {
    Pt3 P{L->one(), L->zero(), L->zero()};
    pts.push_back(P);
  }
  std::sort(pts.begin(), pts.end(), pt_less);
  return pts;
}

const std::vector<Place>& places_of_degree(CurveCtx& ctx, u32 rdeg) {
  auto it = ctx.place_pool.find(rdeg);
  if (it != ctx.place_pool.end()) return it->second;
  std::vector<Place> out;
  for (const Pt3& P : points_over(ctx, rdeg)) {
    Place pl = make_place(ctx, P);
    if (pl.rdeg == rdeg) out.push_back(pl);
  }
  std::sort(out.begin(), out.end(), place_less);
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Place& a, const Place& b) { return place_eq(a, b); }),
            out.end());
  return ctx.place_pool.emplace(rdeg, std::move(out)).first->second;
}

// ---------- local parametrization ----------

static Poly<Series<Fq>> shifted_series_poly(const BiPoly& f, const Fq& a0, u32 prec) {
  // f(a0 + u, y) as a polynomial in y with series coefficients in u
  const Level* lv = a0.lv;
  Poly<Fq> sh(lv->zero(), {a0, lv->one()});  // a0 + u
  Poly<Series<Fq>> G(Series<Fq>(lv->zero(), prec));
  for (const auto& row : f.c) {
    Poly<Fq> comp = compose(row, sh);
    G.c.push_back(Series<Fq>::from_poly(comp, prec));
  }
  G.norm();
  return G;
}

const LocalPar& local_par(CurveCtx& ctx, const Place& P, u32 prec) {
  std::string key = place_repr(P);
  auto it = ctx.local_cache.find(key);
  if (it != ctx.local_cache.end() && it->second.prec >= prec) return it->second;
  if (it != ctx.local_cache.end()) ctx.local_cache.erase(it);

  const Level* L = P.rep.x.lv;
  const Form3& FL = ctx.F_at(L);
  const Pt3& R = P.rep;
  // chart with nonvanishing coordinate, preferring z, then y, then x
  int chart;
  Fq a0 = L->zero(), b0 = L->zero();
  BiPoly f = bi_zero(L);
  if (!R.z.is_zero()) {
    chart = 0;
    Fq s = R.z.inv();
    a0 = R.x * s;
    b0 = R.y * s;
    f = FL.chart_z();
  } else if (!R.y.is_zero()) {
    chart = 1;
    Fq s = R.y.inv();
    a0 = R.x * s;
    b0 = R.z * s;
    f = FL.chart_y();
  } else {
    chart = 2;
    a0 = R.y;  // x == 1
    b0 = R.z;
    f = FL.chart_x();
  }
  Fq db = bi_eval(d_dy(f), a0, b0);  // outer-variable partial
  Fq da = bi_eval(d_dx(f), a0, b0);
  JAC3_CHECK(!(da.is_zero() && db.is_zero()), "local chart hit a singular point");
  Series<Fq> sa(L->zero(), prec), sb(L->zero(), prec);
  if (!db.is_zero()) {
    // uniformizer u = a - a0
    Poly<Series<Fq>> G = shifted_series_poly(f, a0, prec);
    sb = series_root(G, b0);
    sa = Series<Fq>::constant(a0, prec) + Series<Fq>::variable(L->one(), prec);
  } else {
    Poly<Series<Fq>> G = shifted_series_poly(swap_xy(f), b0, prec);
    sa = series_root(G, a0);
    sb = Series<Fq>::constant(b0, prec) + Series<Fq>::variable(L->one(), prec);
  }
  Series<Fq> one = Series<Fq>::constant(L->one(), prec);
  LocalPar lp = chart == 0 ? LocalPar(sa, sb, one)
               : chart == 1 ? LocalPar(sa, one, sb)
                            : LocalPar(one, sa, sb);
  return ctx.local_cache.emplace(key, std::move(lp)).first->second;
}

// evaluate a form on a local parametrization
static Series<Fq> form_on_series(const Form3& g, const LocalPar& lp) {
  u32 prec = lp.prec;
  const Level* lv = g.lv;
  Series<Fq> one = Series<Fq>::constant(lv->one(), prec);
  std::vector<Series<Fq>> px{one}, py{one}, pz{one};
  for (u32 k = 1; k <= g.d; ++k) {
    px.push_back(px.back() * lp.x);
    py.push_back(py.back() * lp.y);
    pz.push_back(pz.back() * lp.z);
  }
  Series<Fq> acc(lv->zero(), prec);
  for (u32 i = 0; i <= g.d; ++i)
    for (u32 j = 0; i + j <= g.d; ++j) {
      const Fq& co = g.get(i, j);
      if (co.is_zero()) continue;
      acc = acc + Series<Fq>::constant(co, prec) * px[i] * py[j] * pz[g.d - i - j];
    }
  return acc;
}

i64 valuation_of_form(CurveCtx& ctx, const Place& P, const Form3& g) {
  const Level* L = P.rep.x.lv;
  Form3 gL = base_change(ctx.tw, g, L);
  for (u32 prec = 8; prec <= 512; prec *= 2) {
    const LocalPar& lp = local_par(ctx, P, prec);
    Series<Fq> s = form_on_series(gL, lp);
    u32 v = s.valuation();
    if (v < prec) return (i64)v;
  }
  JAC3_CHECK(false, "form appears to vanish identically along the curve");
  return -1;
}

Series<Fq> form_series_at(CurveCtx& ctx, const Place& P, const Form3& g, u32 prec) {
  const Level* L = P.rep.x.lv;
  Form3 gL = base_change(ctx.tw, g, L);
  return form_on_series(gL, local_par(ctx, P, prec));
}

// ---------- intersection divisors ----------

static Fq some_root_level(CurveCtx& ctx, const Poly<Fq>& u, const Level** out_level) {
  // one root of an irreducible u over its own level, placed in the splitting level
  const Level* L = u.z.lv;
  const Level* LE = ctx.tw.level(L->deg * (u32)u.deg());
  std::vector<Fq> lifted;
  for (const Fq& e : u.c) lifted.push_back(ctx.tw.embed(e, LE));
  std::vector<Fq> roots = linear_roots(LE, lifted, ctx.seed);
  JAC3_CHECK(!roots.empty(), "irreducible factor failed to split where it must");
  *out_level = LE;
  return roots[0];
}

static Form3 form_lift(CurveCtx& ctx, const Form3& g, const Level* L) {
  return base_change(ctx.tw, g, L);
}

Divisor divisor_of_form(CurveCtx& ctx, const Form3& g0) {
  JAC3_CHECK(!g0.is_zero(), "divisor of the zero form");
  Form3 g = base_change(ctx.tw, g0, ctx.kb);
  BiPoly f = ctx.F.chart_z();
  BiPoly gz = g.chart_z();
  if (g.d >= ctx.F.d && divides_mod_x_units(f, gz))
    throw error("form vanishes on the whole curve");

  std::vector<Place> cand;
  // affine intersections through the resultant in x
  Poly<Fq> R = resultant_y(f, gz);
  JAC3_CHECK(!R.is_zero(), "resultant vanished identically; common component");
  for (const FactorUnit& fu : factorize(R, ctx.seed)) {
    const Level* LA = nullptr;
    Fq alpha = some_root_level(ctx, fu.f, &LA);
    const Form3& FL = ctx.F_at(LA);
    BiPoly fL = FL.chart_z();
    BiPoly gL = form_lift(ctx, g, LA).chart_z();
    Poly<Fq> fy = eval_at_x(fL, alpha);
    Poly<Fq> gy = eval_at_x(gL, alpha);
    JAC3_CHECK(!fy.is_zero(), "curve contains a vertical line");
    Poly<Fq> cg = gy.is_zero() ? fy : gcd(fy, gy);
    if (cg.deg() < 1) continue;  // spurious resultant root
    for (const FactorUnit& uu : factorize(cg, ctx.seed)) {
      const Level* LB = nullptr;
      Fq beta = some_root_level(ctx, uu.f, &LB);
      Pt3 P{ctx.tw.embed(alpha, LB), beta, LB->one()};
      cand.push_back(make_place(ctx, P));
    }
  }
  // intersections on the line z = 0
  {
    const Level* L = ctx.kb;
    Poly<Fq> b1(L->zero()), b2(L->zero());
    for (u32 i = 0; i <= ctx.F.d; ++i) b1.c.push_back(ctx.F.get(i, ctx.F.d - i));
    for (u32 i = 0; i <= g.d; ++i) b2.c.push_back(g.get(i, g.d - i));
    b1.norm();
    b2.norm();
    JAC3_CHECK(!b1.is_zero(), "curve contains the line at infinity");
    Poly<Fq> cg = b2.is_zero() ? b1 : gcd(b1, b2);
    if (cg.deg() >= 1) {
      for (const FactorUnit& uu : factorize(cg, ctx.seed)) {
        const Level* LB = nullptr;
        Fq x0 = some_root_level(ctx, uu.f, &LB);
        Pt3 P{x0, LB->one(), LB->zero()};
        cand.push_back(make_place(ctx, P));
      }
    }
    if (ctx.F.get(ctx.F.d, 0).is_zero() && g.get(g.d, 0).is_zero()) {
      Pt3 P{L->one(), L->zero(), L->zero()};
      cand.push_back(make_place(ctx, P));
    }
  }
  std::sort(cand.begin(), cand.end(), place_less);
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](const Place& a, const Place& b) { return place_eq(a, b); }),
             cand.end());
  Divisor D;
  for (const Place& P : cand) {
    i64 v = valuation_of_form(ctx, P, g);
    JAC3_CHECK(v >= 1, "intersection point with zero multiplicity");
    D.add(P, v);
  }
  JAC3_CHECK(D.degree() == (i64)ctx.F.d * (i64)g.d,
             "intersection degree does not match the product of degrees");
  return D;
}

Divisor divisor_of_ratio(CurveCtx& ctx, const Form3& num, const Form3& den) {
  JAC3_CHECK(num.d == den.d, "ratio of forms of different degrees");
  return divisor_of_form(ctx, num) - divisor_of_form(ctx, den);
}

std::vector<Fq> kb_coords(CurveCtx& ctx, const Fq& x) {
  const Level* kb = ctx.kb;
  const Level* L = x.lv;
  if (L == kb) return {x};
  JAC3_CHECK(L->deg % kb->deg == 0, "element does not lie over the working base");
  u32 M = kb->deg, N = L->deg, rd = N / M;
  auto it = ctx.scalar_cache.find(N);
  if (it == ctx.scalar_cache.end()) {
    // columns: emb(b_i) * gen^e for the F_p basis b_i of kb and e < rd
    FpMat fwd(L->p, N, N);
    Fq gp = L->one();
    for (u32 e = 0; e < rd; ++e) {
      for (u32 i = 0; i < M; ++i) {
        Fq b = kb->zero();
        b.c[i] = 1;
        Fq col = ctx.tw.embed(b, L) * gp;
        for (u32 r = 0; r < N; ++r) fwd.at(r, e * M + i) = col.c[r];
      }
      gp = gp * L->gen();
    }
    FpSolver sv;
    sv.build(fwd);
    it = ctx.scalar_cache.emplace(N, std::move(sv)).first;
  }
  auto sol = it->second.solve(std::vector<u32>(x.c.begin(), x.c.end()));
  JAC3_CHECK(sol.has_value(), "scalar restriction failed");
  std::vector<Fq> out;
  out.reserve(rd);
  for (u32 e = 0; e < rd; ++e) {
    Fq v = kb->zero();
    for (u32 i = 0; i < M; ++i) v.c[i] = (*sol)[e * M + i];
    out.push_back(v);
  }
  return out;
}

}  // namespace jac3
