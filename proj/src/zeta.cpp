#include "jac3/zeta.hpp"

#include <algorithm>
#include <utility>

namespace jac3 {

using Rat = boost::multiprecision::cpp_rational;
using RPoly = std::vector<Rat>;  // c[i] multiplies x^i

static void rnorm(RPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
static int rdeg(const RPoly& f) { return (int)f.size() - 1; }

static RPoly rderiv(const RPoly& f) {
  RPoly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * (int)i);
  rnorm(d);
  return d;
}

static RPoly rmul(const RPoly& a, const RPoly& b) {
  if (a.empty() || b.empty()) return {};
  RPoly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

static RPoly rrem(RPoly a, const RPoly& b) {
  JAC3_CHECK(!b.empty(), "remainder by the zero polynomial");
  rnorm(a);
  while (!a.empty() && rdeg(a) >= rdeg(b)) {
    Rat q = a.back() / b.back();
    int shift = rdeg(a) - rdeg(b);
    for (int i = 0; i <= rdeg(b); ++i) a[(size_t)i + shift] -= q * b[i];
    rnorm(a);
  }
  return a;
}

static RPoly rdivexact(const RPoly& a, const RPoly& b) {
  JAC3_CHECK(!b.empty(), "division by the zero polynomial");
  RPoly q(a.size(), Rat(0));
  RPoly r = a;
  rnorm(r);
  while (!r.empty() && rdeg(r) >= rdeg(b)) {
    Rat c = r.back() / b.back();
    int shift = rdeg(r) - rdeg(b);
    q[shift] = c;
    for (int i = 0; i <= rdeg(b); ++i) r[(size_t)i + shift] -= c * b[i];
    rnorm(r);
  }
  JAC3_CHECK(r.empty(), "polynomial division must be exact here");
  rnorm(q);
  return q;
}

static RPoly rgcd(RPoly a, RPoly b) {
  rnorm(a);
  rnorm(b);
  while (!b.empty()) {
    RPoly r = rrem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

static int rsgn(const Rat& x) { return x == 0 ? 0 : (x > 0 ? 1 : -1); }

static u32 variations(const std::vector<int>& s) {
  u32 v = 0;
  int last = 0;
  for (int x : s) {
    if (x == 0) continue;
    if (last != 0 && x != last) ++v;
    last = x;
  }
  return v;
}

// distinct real roots of a squarefree polynomial by sign variations of the
// Sturm chain at both ends of the line
static u32 real_roots_squarefree(const RPoly& f) {
  if (rdeg(f) <= 0) return 0;
  std::vector<RPoly> chain{f, rderiv(f)};
  while (rdeg(chain.back()) > 0) {
    RPoly r = rrem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (Rat& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  std::vector<int> hi, lo;
  for (const RPoly& g : chain) {
    if (g.empty()) continue;
    int s = rsgn(g.back());
    hi.push_back(s);
    lo.push_back(rdeg(g) % 2 == 0 ? s : -s);
  }
  return variations(lo) - variations(hi);
}

static RPoly squarefree_of(const RPoly& f) {
  RPoly g = rgcd(f, rderiv(f));
  return rdivexact(f, g);
}

// h(x) = x^g - b1 x^{g-1} + b2 x^{g-2} - ...
static RPoly from_bcoeffs(const std::vector<Big>& b) {
  u32 g = (u32)b.size();
  RPoly h(g + 1, Rat(0));
  h[g] = 1;
  for (u32 k = 1; k <= g; ++k) h[g - k] = (k % 2 == 1) ? Rat(-b[k - 1]) : Rat(b[k - 1]);
  return h;
}

bool real_weil_valid(const std::vector<Big>& b, const Big& Q) {
  RPoly hs = squarefree_of(from_bcoeffs(b));
  if ((int)real_roots_squarefree(hs) != rdeg(hs)) return false;
  // peel roots sitting exactly at the ends of the interval
  Big s = sqrt(Q);
  if (s * s == Q) {
    for (const Big& r : {2 * s, -2 * s}) {
      RPoly lin{Rat(-r), Rat(1)};
      while (rdeg(hs) >= 1 && rrem(hs, lin).empty()) hs = rdivexact(hs, lin);
    }
  } else {
    RPoly quad{Rat(-4 * Q), Rat(0), Rat(1)};
    while (rdeg(hs) >= 2 && rrem(hs, quad).empty()) hs = rdivexact(hs, quad);
  }
  int d = rdeg(hs);
  if (d <= 0) return true;
  // z^d h(z + Q/z) has a real root exactly when h has a real root outside
  // the closed interval [-2 sqrt Q, 2 sqrt Q]
  RPoly W((size_t)2 * d + 1, Rat(0));
  RPoly zq{Rat(Q), Rat(0), Rat(1)};
  RPoly pw{Rat(1)};
  for (int k = 0; k <= d; ++k) {
    for (int i = 0; i <= rdeg(pw); ++i) W[(size_t)i + d - k] += hs[k] * pw[i];
    if (k < d) pw = rmul(pw, zq);
  }
  rnorm(W);
  return real_roots_squarefree(squarefree_of(W)) == 0;
}

static Big binom(u32 n, u32 k) {
  Big r = 1;
  for (u32 i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// power sum of the real spectrum from the count power sums, genus g
static Big s_from_p(const std::vector<Big>& P, u32 m, u32 g, const Big& Q) {
  Big s = P[m - 1];
  for (u32 j = 1; 2 * j < m; ++j) s += binom(m, j) * pow(Q, j) * P[m - 2 * j - 1];
  if (m % 2 == 0) s += binom(m, m / 2) * pow(Q, m / 2) * g;
  return s;
}

static Big p_from_s(const Big& s, const std::vector<Big>& P, u32 m, u32 g, const Big& Q) {
  Big p = s;
  for (u32 j = 1; 2 * j < m; ++j) p -= binom(m, j) * pow(Q, j) * P[m - 2 * j - 1];
  if (m % 2 == 0) p -= binom(m, m / 2) * pow(Q, m / 2) * g;
  return p;
}

// first k symmetric functions from power sums; false on a fractional division
static bool newton_fit(const std::vector<Big>& s, u32 k, std::vector<Big>& b) {
  b.assign(k, 0);
  for (u32 n = 1; n <= k; ++n) {
    Big acc = 0;
    for (u32 i = 1; i <= n; ++i) {
      Big e = (i == n) ? Big(1) : b[n - i - 1];
      Big t = e * s[i - 1];
      acc += (i % 2 == 1) ? t : -t;
    }
    if (acc % n != 0) return false;
    b[n - 1] = acc / n;
  }
  return true;
}

// power sum recurrence past the degree of the fitted polynomial
static Big s_forward(const std::vector<Big>& b, const std::vector<Big>& s, u32 m) {
  Big acc = 0;
  for (u32 i = 1; i <= (u32)b.size(); ++i) {
    Big t = b[i - 1] * s[m - i - 1];
    acc += (i % 2 == 1) ? t : -t;
  }
  return acc;
}

// a genus-gp spectrum fitted to the first gp counts must be integral, real,
// bounded, and must reproduce every further observed count
static bool small_genus_consistent(const Big& Q, const std::vector<Big>& P, u32 gp) {
  std::vector<Big> s;
  for (u32 m = 1; m <= gp; ++m) s.push_back(s_from_p(P, m, gp, Q));
  std::vector<Big> b;
  if (!newton_fit(s, gp, b)) return false;
  if (!real_weil_valid(b, Q)) return false;
  for (u32 m = gp + 1; m <= (u32)P.size(); ++m) {
    s.push_back(s_forward(b, s, m));
    if (p_from_s(s[m - 1], P, m, gp, Q) != P[m - 1]) return false;
  }
  return true;
}

// integrality and growth constraints the level-5 and level-6 counts of any
// curve must satisfy
static bool place_counts_plausible(const Big& Q, const std::vector<Big>& P, const Big& P5,
                                   const Big& P6) {
  Big N1 = Q + 1 - P[0], N2 = pow(Q, 2) + 1 - P[1], N3 = pow(Q, 3) + 1 - P[2];
  Big N5 = pow(Q, 5) + 1 - P5, N6 = pow(Q, 6) + 1 - P6;
  if (N5 < N1 || (N5 - N1) % 5 != 0) return false;
  if (N6 < N2 || N6 < N3) return false;
  Big a6 = N6 - N3 - N2 + N1;
  return a6 >= 0 && a6 % 6 == 0;
}

static bool genus5_consistent(const Big& Q, const std::vector<Big>& P) {
  std::vector<Big> s;
  for (u32 m = 1; m <= 4; ++m) s.push_back(s_from_p(P, m, 5, Q));
  std::vector<Big> b;
  if (!newton_fit(s, 4, b)) return false;
  if (P.size() >= 6) {
    // observed fifth count pins the last coefficient; the sixth must follow
    s.push_back(s_from_p(P, 5, 5, Q));
    Big acc = 0;
    for (u32 i = 1; i <= 5; ++i) {
      Big e = (i == 5) ? Big(1) : b[4 - i];
      Big t = e * s[i - 1];
      acc += (i % 2 == 1) ? t : -t;
    }
    if (acc % 5 != 0) return false;
    b.push_back(acc / 5);
    if (!real_weil_valid(b, Q)) return false;
    s.push_back(s_forward(b, s, 6));
    return p_from_s(s[5], P, 6, 5, Q) == P[5];
  }
  // otherwise sweep the last coefficient over its Weil range
  Big B = sqrt(Big(1024) * pow(Q, 5));
  for (Big b5 = -B; b5 <= B; ++b5) {
    std::vector<Big> bc = b;
    bc.push_back(b5);
    if (!real_weil_valid(bc, Q)) continue;
    std::vector<Big> sc = s;
    // the fifth Newton identity still carries its own coefficient term
    sc.push_back(s_forward(b, sc, 5) + 5 * b5);
    Big P5 = p_from_s(sc[4], P, 5, 5, Q);
    sc.push_back(s_forward(bc, sc, 6));
    Big P6 = p_from_s(sc[5], P, 6, 5, Q);
    if (place_counts_plausible(Q, P, P5, P6)) return true;
  }
  return false;
}

GenusCertificate genus_from_counts(const Big& Q, const std::vector<i64>& N) {
  JAC3_CHECK(N.size() >= 4, "the zeta fit needs at least four counts");
  for (u32 i = 0; i < 4; ++i) JAC3_CHECK(N[i] >= 0, "the first four counts must be observed");
  GenusCertificate c;
  c.method = "zeta";
  c.Q = Q;
  c.counts = N;
  // a negative entry marks a level without an observed count: the fit still
  // predicts through it but only observed levels are compared or excluded on
  std::vector<Big> P, Pobs;
  bool prefix = true;
  for (size_t m = 1; m <= N.size(); ++m) {
    Big pm = N[m - 1] < 0 ? Big(0) : pow(Q, (unsigned)m) + 1 - N[m - 1];
    P.push_back(pm);
    if (N[m - 1] < 0)
      prefix = false;
    else if (prefix)
      Pobs.push_back(pm);
  }
  std::vector<Big> s;
  for (u32 m = 1; m <= 4; ++m) s.push_back(s_from_p(P, m, 4, Q));
  std::vector<Big> b;
  bool fit = newton_fit(s, 4, b);
  if (fit)
    for (u32 m = 5; m <= (u32)P.size(); ++m) {
      s.push_back(s_forward(b, s, m));
      if (N[m - 1] >= 0 && p_from_s(s[m - 1], P, m, 4, Q) != P[m - 1]) {
        fit = false;
        break;
      }
    }
  c.fit_ok = fit;
  if (fit) {
    c.real_coeffs = b;
    c.weil_ok = real_weil_valid(b, Q);
  }
  c.g2_excluded = !small_genus_consistent(Q, Pobs, 2);
  c.g3_excluded = !small_genus_consistent(Q, Pobs, 3);
  c.g5_excluded = !genus5_consistent(Q, Pobs);
  c.ok = c.fit_ok && c.weil_ok && c.g2_excluded && c.g3_excluded && c.g5_excluded;
  return c;
}

std::vector<i64> quotient_counts(TrigonalData& td, u32 mmax) {
  std::vector<i64> out;
  for (u32 m = 1; m <= mmax; ++m) out.push_back(cover_counts(td, m).quotient);
  return out;
}

GenusCertificate genus_certificate(TrigonalData& td) {
  if (td.ctx->kb->p >= 5) {
    GenusCertificate c;
    c.method = "ramification";
    c.Q = td.ctx->kb->card();
    c.ramification = ramification_total(td);
    c.ok = c.ramification == 12;
    return c;
  }
  return genus_from_counts(td.ctx->kb->card(), quotient_counts(td, 6));
}

bool tilde_counts_within_weil(TrigonalData& td, u32 mmax) {
  Big Q = td.ctx->kb->card();
  for (u32 m = 1; m <= mmax; ++m) {
    Big diff = Big(cover_counts(td, m).tilde) - pow(Q, m) - 1;
    if (diff * diff > 196 * pow(Q, m)) return false;
  }
  return true;
}

}  // namespace jac3
