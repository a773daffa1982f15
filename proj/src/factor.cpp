#include "jac3/factor.hpp"

#include <algorithm>
#include <map>

#include "jac3/rng.hpp"

namespace jac3 {

bool poly_less(const Poly<Fq>& a, const Poly<Fq>& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  for (int i = a.deg(); i >= 0; --i) {
    if (a.c[i] != b.c[i]) return elem_less(a.c[i], b.c[i]);
  }
  return false;
}

// f with zero derivative is g(x^p); return g
static Poly<Fq> pth_root(const Poly<Fq>& f) {
  const Level* lv = f.z.lv;
  u32 p = lv->p;
  Poly<Fq> g(f.z);
  g.c.assign(f.deg() / p + 1, f.z);
  for (int i = 0; i <= f.deg(); ++i) {
    Fq ci = f.c[i];
    if (ci.is_zero()) continue;
    JAC3_CHECK(i % p == 0, "pth_root of a polynomial that is not one");
    g.c[i / p] = frobenius(ci, lv->deg - 1);  // inverse of x -> x^p
  }
  g.norm();
  return g;
}

static Poly<Fq> random_poly(const Level* lv, int dmax, Rng& rng) {
  std::vector<Fq> cs;
  for (int i = 0; i <= dmax; ++i) {
    std::vector<u32> cc(lv->deg);
    for (u32& v : cc) v = (u32)rng.below(lv->p);
    cs.emplace_back(lv, std::move(cc));
  }
  return Poly<Fq>(lv->zero(), cs);
}

// equal-degree splitting of a squarefree product of degree-d irreducibles
static void edf(const Poly<Fq>& g, u32 d, Rng& rng, std::vector<Poly<Fq>>& out) {
  if (g.deg() <= 0) return;
  if ((u32)g.deg() == d) {
    out.push_back(make_monic(g));
    return;
  }
  const Level* lv = g.z.lv;
  Big Q = lv->card();
  Poly<Fq> h(g.z);
  for (;;) {
    Poly<Fq> r = random_poly(lv, g.deg() - 1, rng);
    if (r.deg() < 1) continue;
    if (lv->p != 2) {
      Big e = 1;
      for (u32 i = 0; i < d; ++i) e *= Q;
      Poly<Fq> s = powmod(r, (e - 1) / 2, g) - one_like(g);
      h = gcd(s, g);
    } else {
      // trace over F_2 of r inside each residue field F_{2^{k d}}
      u32 kd = lv->deg * d;
      Poly<Fq> s = r % g;
      Poly<Fq> acc = s;
      for (u32 i = 1; i < kd; ++i) {
        s = mulmod(s, s, g);
        acc = acc + s;
      }
      h = gcd(acc, g);
    }
    if (h.deg() > 0 && h.deg() < g.deg()) break;
  }
  edf(make_monic(h), d, rng, out);
  edf(make_monic(divexact(g, h)), d, rng, out);
}

// factor a squarefree monic polynomial
static void split_squarefree(Poly<Fq> w, Rng& rng, std::vector<Poly<Fq>>& out) {
  const Level* lv = w.z.lv;
  Big q = lv->card();
  Poly<Fq> x = Poly<Fq>::monomial(lv->one(), 1);
  Poly<Fq> h = x % w;  // x^{q^0} would be x; start the iteration at i=1
  for (u32 d = 1; 2 * d <= (u32)w.deg(); ++d) {
    h = powmod(h, q, w);
    Poly<Fq> g = gcd(h - x, w);
    if (g.deg() > 0) {
      edf(g, d, rng, out);
      w = divexact(w, g);
      h = h % w;
    }
  }
  if (w.deg() > 0) out.push_back(make_monic(w));
}

std::vector<FactorUnit> factorize(const Poly<Fq>& f, u64 seed) {
  JAC3_CHECK(!f.is_zero(), "factorize of zero");
  Rng rng = rng_stream(seed, "factorize");
  const Level* lv = f.z.lv;
  u32 p = lv->p;
  std::vector<FactorUnit> res;
  Poly<Fq> cur = make_monic(f);
  u32 scale = 1;
  while (cur.deg() > 0) {
    Poly<Fq> dp = cur.derivative();
    if (dp.is_zero()) {
      cur = pth_root(cur);
      scale *= p;
      continue;
    }
    Poly<Fq> w = divexact(cur, gcd(cur, dp));
    std::vector<Poly<Fq>> irr;
    split_squarefree(make_monic(w), rng, irr);
    for (const Poly<Fq>& u : irr) {
      u32 m = 0;
      for (;;) {
        auto [q2, r2] = divrem(cur, u);
        if (!r2.is_zero()) break;
        cur = q2;
        ++m;
      }
      JAC3_CHECK(m > 0, "squarefree factor must divide");
      res.push_back({u, m * scale});
    }
  }
  std::sort(res.begin(), res.end(),
            [](const FactorUnit& a, const FactorUnit& b) { return poly_less(a.f, b.f); });
  return res;
}

bool is_irreducible_poly(const Poly<Fq>& f) {
  if (f.deg() <= 0) return false;
  if (f.deg() == 1) return true;
  const Level* lv = f.z.lv;
  Big q = lv->card();
  u32 d = (u32)f.deg();
  Poly<Fq> fm = make_monic(f);
  Poly<Fq> x = Poly<Fq>::monomial(lv->one(), 1);
  // x^{q^d} == x mod f
  Poly<Fq> h = x % fm;
  std::map<u32, Poly<Fq>> at;  // prefix powers x^{q^i}
  for (u32 i = 1; i <= d; ++i) {
    h = powmod(h, q, fm);
    at.emplace(i, h);
  }
  if (!(at.at(d) == x % fm)) return false;
  for (u32 l = 2; l <= d; ++l) {
    if (d % l != 0) continue;
    bool lp = true;
    for (u32 m = 2; m < l; ++m)
      if (l % m == 0) lp = false;
    if (!lp) continue;
    Poly<Fq> g = gcd(at.at(d / l) - x, fm);
    if (g.deg() != 0) return false;
  }
  return true;
}

std::vector<Fq> poly_roots(const Poly<Fq>& f, u64 seed) {
  return linear_roots(f.z.lv, f.c, seed);
}

Poly<Fq> squarefree_part(const Poly<Fq>& f, u64 seed) {
  auto fs = factorize(f, seed);
  Poly<Fq> r = one_like(f);
  for (const auto& u : fs) r = r * u.f;
  return r;
}

}  // namespace jac3
