#include "jac3/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "jac3/poly.hpp"
#include "jac3/rng.hpp"

namespace jac3 {

// ---------- scalar arithmetic mod p ----------

static u32 addm(u32 a, u32 b, u32 p) { u32 s = a + b; return s >= p ? s - p : s; }
static u32 subm(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }
static u32 mulm(u32 a, u32 b, u32 p) { return (u32)((u64)a * b % p); }
static u32 invm(u32 a, u32 p) {
  JAC3_CHECK(a % p != 0, "inverse of zero mod p");
  i64 t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    i64 q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  return (u32)(t < 0 ? t + p : t);
}

// ---------- bootstrap polynomials over F_p (vector<u32>, constant first) ----------

using Pv = std::vector<u32>;

static void pv_norm(Pv& v) { while (!v.empty() && v.back() == 0) v.pop_back(); }
static int pv_deg(const Pv& v) { return (int)v.size() - 1; }

static Pv pv_mul(const Pv& a, const Pv& b, u32 p) {
  if (a.empty() || b.empty()) return {};
  Pv r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (u32)(((u64)a[i] * b[j] + r[i + j]) % p);
  }
  pv_norm(r);
  return r;
}

static void pv_rem_inplace(Pv& a, const Pv& m, u32 p) {
  JAC3_CHECK(!m.empty(), "rem by zero");
  u32 li = invm(m.back(), p);
  while ((int)a.size() >= (int)m.size()) {
    if (a.back() == 0) { a.pop_back(); continue; }
    u32 f = mulm(a.back(), li, p);
    size_t k = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) a[i + k] = subm(a[i + k], mulm(f, m[i], p), p);
    pv_norm(a);
  }
}

static Pv pv_mulmod(const Pv& a, const Pv& b, const Pv& m, u32 p) {
  Pv r = pv_mul(a, b, p);
  pv_rem_inplace(r, m, p);
  return r;
}

static Pv pv_gcd(Pv a, Pv b, u32 p) {
  pv_norm(a); pv_norm(b);
  while (!b.empty()) {
    pv_rem_inplace(a, b, p);
    std::swap(a, b);
  }
  if (!a.empty() && a.back() != 1) {
    u32 s = invm(a.back(), p);
    for (u32& c : a) c = mulm(c, s, p);
  }
  return a;
}

// inverse of a modulo m (both over F_p), m of degree >= 1
static Pv pv_invmod(Pv a, const Pv& m, u32 p) {
  pv_rem_inplace(a, m, p);
  Pv r0 = m, r1 = a, u0 = {}, u1 = {1};
  while (!r1.empty()) {
    // q, r of r0 / r1
    Pv q;
    Pv r = r0;
    u32 li = invm(r1.back(), p);
    if ((int)r.size() >= (int)r1.size()) q.assign(r.size() - r1.size() + 1, 0);
    while ((int)r.size() >= (int)r1.size()) {
      if (r.back() == 0) { r.pop_back(); continue; }
      u32 f = mulm(r.back(), li, p);
      size_t k = r.size() - r1.size();
      q[k] = f;
      for (size_t i = 0; i < r1.size(); ++i) r[i + k] = subm(r[i + k], mulm(f, r1[i], p), p);
      pv_norm(r);
    }
    pv_norm(q);
    Pv u2 = u0;
    Pv qu = pv_mul(q, u1, p);
    u2.resize(std::max(u2.size(), qu.size()), 0);
    for (size_t i = 0; i < qu.size(); ++i) u2[i] = subm(u2[i], qu[i], p);
    pv_norm(u2);
    r0 = r1; r1 = r;
    u0 = u1; u1 = u2;
  }
  JAC3_CHECK(pv_deg(r0) == 0, "element not invertible");
  u32 s = invm(r0[0], p);
  for (u32& c : u0) c = mulm(c, s, p);
  pv_rem_inplace(u0, m, p);
  return u0;
}

// ---------- FpMat ----------

std::vector<u32> FpMat::mul_vec(const std::vector<u32>& v) const {
  JAC3_CHECK(v.size() == cols, "FpMat shape mismatch");
  std::vector<u32> r(rows, 0);
  for (u32 i = 0; i < rows; ++i) {
    u64 acc = 0;
    const u32* row = &a[(size_t)i * cols];
    for (u32 j = 0; j < cols; ++j) acc += (u64)row[j] * v[j] % p;
    r[i] = (u32)(acc % p);
  }
  return r;
}

FpMat FpMat::mul(const FpMat& o) const {
  JAC3_CHECK(cols == o.rows, "FpMat shape mismatch");
  FpMat r(p, rows, o.cols);
  for (u32 i = 0; i < rows; ++i)
    for (u32 k = 0; k < cols; ++k) {
      u32 v = at(i, k);
      if (!v) continue;
      for (u32 j = 0; j < o.cols; ++j)
        r.at(i, j) = (u32)(((u64)v * o.at(k, j) + r.at(i, j)) % p);
    }
  return r;
}

FpMat FpMat::identity(u32 p_, u32 n) {
  FpMat m(p_, n, n);
  for (u32 i = 0; i < n; ++i) m.at(i, i) = 1 % p_;
  return m;
}

FpMat FpMat::pow(u64 e) const {
  JAC3_CHECK(rows == cols, "FpMat pow of non-square");
  FpMat acc = identity(p, rows), base = *this;
  while (e) {
    if (e & 1) acc = acc.mul(base);
    base = base.mul(base);
    e >>= 1;
  }
  return acc;
}

// ---------- FpSolver ----------

void FpSolver::build(const FpMat& fwd) {
  u32 p = fwd.p, n = fwd.rows, m = fwd.cols;
  red = fwd;
  ops = FpMat::identity(p, n);
  pivot.assign(m, n);
  u32 r = 0;
  for (u32 j = 0; j < m && r < n; ++j) {
    u32 pv = r;
    while (pv < n && red.at(pv, j) == 0) ++pv;
    if (pv == n) continue;
    if (pv != r)
      for (u32 k = 0; k < m; ++k) std::swap(red.at(pv, k), red.at(r, k));
    if (pv != r)
      for (u32 k = 0; k < n; ++k) std::swap(ops.at(pv, k), ops.at(r, k));
    u32 s = invm(red.at(r, j), p);
    for (u32 k = 0; k < m; ++k) red.at(r, k) = mulm(red.at(r, k), s, p);
    for (u32 k = 0; k < n; ++k) ops.at(r, k) = mulm(ops.at(r, k), s, p);
    for (u32 i = 0; i < n; ++i) {
      if (i == r) continue;
      u32 f = red.at(i, j);
      if (!f) continue;
      for (u32 k = 0; k < m; ++k) red.at(i, k) = subm(red.at(i, k), mulm(f, red.at(r, k), p), p);
      for (u32 k = 0; k < n; ++k) ops.at(i, k) = subm(ops.at(i, k), mulm(f, ops.at(r, k), p), p);
    }
    pivot[j] = r;
    ++r;
  }
  for (u32 j = 0; j < m; ++j) JAC3_CHECK(pivot[j] != n, "embedding matrix not injective");
}

std::optional<std::vector<u32>> FpSolver::solve(const std::vector<u32>& v) const {
  std::vector<u32> w = ops.mul_vec(v);
  u32 m = red.cols;
  std::vector<u32> x(m, 0);
  for (u32 j = 0; j < m; ++j) x[j] = w[pivot[j]];
  // consistency: rows past the rank must vanish
  for (u32 i = m; i < red.rows; ++i)
    if (w[i] != 0) return std::nullopt;
  return x;
}

// ---------- Fq arithmetic ----------

bool Fq::is_zero() const {
  for (u32 v : c) if (v) return false;
  return true;
}
bool Fq::is_one() const {
  JAC3_CHECK(lv, "element without level");
  if (lv->p == 1) return true;
  if (c.empty() || c[0] != 1 % lv->p) return false;
  for (size_t i = 1; i < c.size(); ++i) if (c[i]) return false;
  return true;
}
Fq Fq::zero_like() const { return lv->zero(); }
Fq Fq::one_like() const { return lv->one(); }

Fq Fq::operator-() const {
  Fq r = *this;
  for (u32& v : r.c) v = v ? lv->p - v : 0;
  return r;
}
Fq Fq::operator+(const Fq& o) const {
  JAC3_CHECK(lv == o.lv, "mixed levels in +");
  Fq r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = addm(c[i], o.c[i], lv->p);
  return r;
}
Fq Fq::operator-(const Fq& o) const {
  JAC3_CHECK(lv == o.lv, "mixed levels in -");
  Fq r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = subm(c[i], o.c[i], lv->p);
  return r;
}
Fq Fq::operator*(const Fq& o) const {
  JAC3_CHECK(lv == o.lv, "mixed levels in *");
  u32 p = lv->p, d = lv->deg;
  if (d == 1) return Fq(lv, {mulm(c[0], o.c[0], p)});
  Pv prod(2 * d - 1, 0);
  for (u32 i = 0; i < d; ++i) {
    if (!c[i]) continue;
    for (u32 j = 0; j < d; ++j)
      prod[i + j] = (u32)(((u64)c[i] * o.c[j] + prod[i + j]) % p);
  }
  // reduce modulo the monic level modulus
  for (u32 k = 2 * d - 2; k >= d; --k) {
    u32 f = prod[k];
    if (!f) continue;
    prod[k] = 0;
    u32 off = k - d;
    for (u32 i = 0; i < d; ++i)
      prod[off + i] = subm(prod[off + i], mulm(f, lv->modulus[i], p), p);
  }
  prod.resize(d);
  return Fq(lv, std::move(prod));
}
bool Fq::operator==(const Fq& o) const {
  JAC3_CHECK(lv == o.lv, "mixed levels in ==");
  return c == o.c;
}
Fq Fq::inv() const {
  JAC3_CHECK(!is_zero(), "inverse of zero");
  u32 p = lv->p;
  if (lv->deg == 1) return Fq(lv, {invm(c[0], p)});
  Pv a = c;
  pv_norm(a);
  Pv r = pv_invmod(a, lv->modulus, p);
  r.resize(lv->deg, 0);
  return Fq(lv, std::move(r));
}
Fq Fq::operator/(const Fq& o) const { return *this * o.inv(); }
Fq Fq::pow(const Big& e) const {
  JAC3_CHECK(e >= 0, "negative exponent");
  Fq acc = lv->one(), base = *this;
  Big k = e;
  while (k > 0) {
    if (boost::multiprecision::bit_test(k, 0)) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

// ---------- Level ----------

Big Level::card() const {
  Big q = 1;
  for (u32 i = 0; i < deg; ++i) q *= p;
  return q;
}

const FpMat& Level::frob_pow(u32 e) const {
  e %= deg;
  std::lock_guard<std::mutex> g(mu_);
  auto it = frob_pow_.find(e);
  if (it != frob_pow_.end()) return it->second;
  FpMat m = frob.pow(e);
  return frob_pow_.emplace(e, std::move(m)).first->second;
}

Fq Level::from_index(u64 n) const {
  std::vector<u32> v(deg, 0);
  for (u32 i = 0; i < deg && n; ++i) {
    v[i] = (u32)(n % p);
    n /= p;
  }
  return Fq(this, std::move(v));
}

bool elem_less(const Fq& a, const Fq& b) {
  JAC3_CHECK(a.lv == b.lv, "mixed levels in elem_less");
  for (size_t i = a.c.size(); i-- > 0;) {
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  }
  return false;
}

Fq frobenius(const Fq& e, u32 times) {
  const Level* lv = e.lv;
  if (lv->deg == 1) return e;
  return Fq(lv, lv->frob_pow(times % lv->deg).mul_vec(e.c));
}

u32 abs_trace(const Fq& e) {
  const Level* lv = e.lv;
  Fq t = e;
  Fq acc = e;
  for (u32 i = 1; i < lv->deg; ++i) {
    t = frobenius(t, 1);
    acc = acc + t;
  }
  for (size_t i = 1; i < acc.c.size(); ++i)
    JAC3_CHECK(acc.c[i] == 0, "trace not in the prime field");
  return acc.c[0];
}

std::string fq_repr(const Fq& e) {
  std::string s;
  for (size_t i = 0; i < e.c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(e.c[i]);
  }
  return s;
}

Fq fq_parse(const Level* lv, const std::string& s) {
  std::vector<u32> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    JAC3_CHECK(!tok.empty(), "bad element literal");
    v.push_back((u32)(std::stoul(tok) % lv->p));
  }
  JAC3_CHECK(v.size() <= lv->deg, "element literal too long for level");
  v.resize(lv->deg, 0);
  return Fq(lv, std::move(v));
}

// ---------- irreducible modulus search (deterministic, memoized) ----------

static std::vector<u32> prime_factors(u32 n) {
  std::vector<u32> f;
  for (u32 d = 2; (u64)d * d <= n; ++d)
    if (n % d == 0) {
      f.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) f.push_back(n);
  return f;
}

// frobenius matrix of F_p[x]/(f) whether or not f is irreducible
static FpMat frob_matrix_for(const Pv& f, u32 p) {
  u32 d = (u32)pv_deg(f);
  Pv x = {0, 1};
  if (d == 1) x = {subm(0, f[0], p)};  // x reduces to a constant
  // x^p mod f by binary powering
  Pv xp = {1};
  Pv base = x;
  u64 e = p;
  while (e) {
    if (e & 1) xp = pv_mulmod(xp, base, f, p);
    base = pv_mulmod(base, base, f, p);
    e >>= 1;
  }
  FpMat M(p, d, d);
  Pv col = {1};
  for (u32 j = 0; j < d; ++j) {
    for (u32 i = 0; i < col.size(); ++i) M.at(i, j) = col[i];
    if (j + 1 < d) col = pv_mulmod(col, xp, f, p);
  }
  return M;
}

static bool is_irreducible(const Pv& f, u32 p) {
  u32 d = (u32)pv_deg(f);
  if (d == 1) return true;
  FpMat M = frob_matrix_for(f, p);
  // x^{p^d} == x
  std::vector<u32> v(d, 0);
  v[1] = 1;
  std::vector<u32> w = v;
  for (u32 i = 0; i < d; ++i) w = M.mul_vec(w);
  if (w != v) return false;
  // gcd(x^{p^{d/l}} - x, f) == 1 for each prime l | d
  for (u32 l : prime_factors(d)) {
    std::vector<u32> u = v;
    for (u32 i = 0; i < d / l; ++i) u = M.mul_vec(u);
    Pv g = u;
    if (g.size() < 2) g.resize(2, 0);
    g[1] = subm(g[1], 1, p);
    pv_norm(g);
    Pv c = pv_gcd(g, f, p);
    if (pv_deg(c) != 0) return false;
  }
  return true;
}

static std::map<std::pair<u32, u32>, Pv> g_modulus_memo;
static std::mutex g_modulus_mu;

// smallest monic irreducible of the given degree in the index order on tails
static Pv modulus_for(u32 p, u32 deg) {
  {
    std::lock_guard<std::mutex> g(g_modulus_mu);
    auto it = g_modulus_memo.find({p, deg});
    if (it != g_modulus_memo.end()) return it->second;
  }
  Pv f;
  for (u64 idx = 0;; ++idx) {
    f.assign(deg + 1, 0);
    f[deg] = 1;
    u64 n = idx;
    for (u32 i = 0; i < deg && n; ++i) {
      f[i] = (u32)(n % p);
      n /= p;
    }
    JAC3_CHECK(n == 0, "irreducible search exhausted");
    if (is_irreducible(f, p)) break;
  }
  std::lock_guard<std::mutex> g(g_modulus_mu);
  g_modulus_memo.emplace(std::make_pair(p, deg), f);
  return f;
}

// ---------- root finding for split polynomials ----------

static void collect_roots(const Level* lv, Poly<Fq> g, Rng& rng, std::vector<Fq>& out) {
  for (;;) {
    if (g.deg() <= 0) return;
    if (g.deg() == 1) {
      out.push_back(-g.c[0]);  // g monic
      return;
    }
    u32 p = lv->p;
    Big Q = lv->card();
    Poly<Fq> h(lv->zero());
    for (;;) {
      std::vector<u32> cc(lv->deg);
      for (u32& v : cc) v = (u32)rng.below(p);
      Fq a(lv, std::move(cc));
      if (p != 2) {
        Poly<Fq> base(lv->zero(), {a, lv->one()});  // x + a
        Poly<Fq> w = powmod(base, (Q - 1) / 2, g) - one_like(g);
        h = gcd(w, g);
      } else {
        if (a.is_zero()) continue;
        // trace polynomial sum (a x)^(2^i), i < deg
        Poly<Fq> s(lv->zero(), {lv->zero(), a});
        s = s % g;
        Poly<Fq> acc = s;
        for (u32 i = 1; i < lv->deg; ++i) {
          s = mulmod(s, s, g);
          acc = acc + s;
        }
        h = gcd(acc, g);
      }
      if (h.deg() > 0 && h.deg() < g.deg()) break;
    }
    Poly<Fq> rest = divexact(g, h);
    collect_roots(lv, make_monic(h), rng, out);
    g = make_monic(rest);
  }
}

std::vector<Fq> linear_roots(const Level* lv, const std::vector<Fq>& poly, u64 seed) {
  Poly<Fq> f(lv->zero(), poly);
  std::vector<Fq> out;
  if (f.deg() <= 0) return out;
  f = make_monic(f);
  Poly<Fq> x = Poly<Fq>::monomial(lv->one(), 1);
  Poly<Fq> xq = powmod(x, lv->card(), f);
  Poly<Fq> g = gcd(xq - x, f);
  if (g.deg() <= 0) return out;
  Rng rng = rng_stream(seed, "linear_roots");
  collect_roots(lv, make_monic(g), rng, out);
  std::sort(out.begin(), out.end(), elem_less);
  return out;
}

// ---------- Tower ----------

static bool is_prime_u32(u32 n) {
  if (n < 2) return false;
  for (u32 d = 2; (u64)d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Tower::Tower(u32 p, u32 base_deg, u64 seed) : p_(p), n_(base_deg), seed_(seed) {
  JAC3_CHECK(is_prime_u32(p), "characteristic must be prime");
  JAC3_CHECK(base_deg >= 1, "base degree must be positive");
  std::lock_guard<std::mutex> g(mu_);
  level_locked(1);
  level_locked(n_);
}

const Level* Tower::level(u32 deg) const {
  std::lock_guard<std::mutex> g(mu_);
  return level_locked(deg);
}

const Level* Tower::level_locked(u32 deg) const {
  JAC3_CHECK(deg >= 1, "level degree must be positive");
  auto it = levels_.find(deg);
  if (it != levels_.end()) return it->second.get();
  auto lv = std::make_unique<Level>();
  lv->p = p_;
  lv->deg = deg;
  lv->modulus = modulus_for(p_, deg);
  lv->frob = frob_matrix_for(lv->modulus, p_);
  const Level* raw = lv.get();
  levels_.emplace(deg, std::move(lv));
  // keep the level lattice gcd-closed and fully saturated with embeddings:
  // divisor edges are fixed bottom-up and overfield edges top-down, so each
  // new edge is pinned by triangles it completes and all routes agree
  std::vector<u32> others;
  for (const auto& [d, _] : levels_)
    if (d != deg) others.push_back(d);
  for (u32 d : others) {
    u32 g = std::gcd(d, deg);
    if (g != d && g != deg) level_locked(g);
  }
  others.clear();
  for (const auto& [d, _] : levels_)
    if (d != deg) others.push_back(d);
  for (u32 d : others)
    if (deg % d == 0) embedding_locked(d, deg);
  for (auto rit = others.rbegin(); rit != others.rend(); ++rit)
    if (*rit % deg == 0) embedding_locked(deg, *rit);
  return raw;
}

const Embedding& Tower::embedding(u32 from, u32 to) const {
  std::lock_guard<std::mutex> g(mu_);
  return embedding_locked(from, to);
}

const Embedding& Tower::embedding_locked(u32 from, u32 to) const {
  JAC3_CHECK(to % from == 0, "no embedding between incompatible levels");
  auto key = std::make_pair(from, to);
  auto it = embs_.find(key);
  if (it != embs_.end()) return *it->second;
  const Level* la = level_locked(from);
  const Level* lc = level_locked(to);
  // creating a missing level saturates the lattice and may build this edge
  it = embs_.find(key);
  if (it != embs_.end()) return *it->second;
  auto emb = std::make_unique<Embedding>();
  emb->from_deg = from;
  emb->to_deg = to;
  if (from == to) {
    emb->gen_image = la->gen().c;
    emb->fwd = FpMat::identity(p_, from);
    emb->down.build(emb->fwd);
    return *embs_.emplace(key, std::move(emb)).first->second;
  }
  // all roots of the source modulus inside the target level
  std::vector<Fq> mod_lift;
  mod_lift.reserve(la->modulus.size());
  for (u32 coef : la->modulus) mod_lift.push_back(lc->from_int((i64)coef));
  std::vector<Fq> roots =
      linear_roots(lc, mod_lift, seed_ ^ fnv1a64("emb") ^ ((u64)from << 32 | to));
  JAC3_CHECK(roots.size() == from, "modulus must split in the target level");
  // every triangle of levels this edge completes must commute, otherwise the
  // same element acquires different coordinates along different chains; the
  // candidate roots are filtered against all embeddings the tower has fixed
  auto apply_root = [&](const std::vector<u32>& xc, const Fq& r) {
    Fq acc = lc->zero();
    for (size_t i = xc.size(); i-- > 0;) acc = acc * r + lc->from_int((i64)xc[i]);
    return acc;
  };
  auto keep = [&](auto&& pred) {
    std::vector<Fq> ok;
    for (const Fq& r : roots)
      if (pred(r)) ok.push_back(r);
    roots = std::move(ok);
  };
  for (const auto& [key2, eb] : embs_) {
    const auto& [u, v] = key2;
    if (u == v || roots.empty()) continue;
    if (u == from && v != to && to % v == 0) {
      // chain from -> v -> to is fixed, so the composite pins the root
      auto jt = embs_.find(std::make_pair(v, to));
      if (jt == embs_.end()) continue;
      Fq target(lc, jt->second->fwd.mul_vec(eb->gen_image));
      keep([&](const Fq& r) { return r == target; });
    } else if (v == from) {
      // both levels contain the subfield of degree u; agree on it
      auto jt = embs_.find(std::make_pair(u, to));
      if (jt == embs_.end()) continue;
      Fq target(lc, jt->second->gen_image);
      keep([&](const Fq& r) { return apply_root(eb->gen_image, r) == target; });
    } else if (u == to) {
      // the fixed edges land in a common overfield of degree v
      auto jt = embs_.find(std::make_pair(from, v));
      if (jt == embs_.end()) continue;
      const Level* le = level_locked(v);
      Fq target(le, jt->second->gen_image);
      keep([&](const Fq& r) { return Fq(le, eb->fwd.mul_vec(r.c)) == target; });
    }
  }
  JAC3_CHECK(!roots.empty(), "no coherent embedding for the tower");
  Fq r = roots[0];
  for (const Fq& cand : roots)
    if (elem_less(cand, r)) r = cand;
  emb->gen_image = r.c;
  emb->fwd = FpMat(p_, to, from);
  Fq powr = lc->one();
  for (u32 j = 0; j < from; ++j) {
    for (u32 i = 0; i < to; ++i) emb->fwd.at(i, j) = powr.c[i];
    if (j + 1 < from) powr = powr * r;
  }
  emb->down.build(emb->fwd);
  return *embs_.emplace(key, std::move(emb)).first->second;
}

Fq Tower::embed(const Fq& e, const Level* to) const {
  if (e.lv == to) return e;
  const Embedding& em = embedding(e.lv->deg, to->deg);
  return Fq(to, em.fwd.mul_vec(e.c));
}

std::optional<Fq> Tower::descend(const Fq& e, const Level* to) const {
  if (e.lv == to) return e;
  if (e.lv->deg % to->deg != 0) return std::nullopt;
  const Embedding& em = embedding(to->deg, e.lv->deg);
  auto x = em.down.solve(e.c);
  if (!x) return std::nullopt;
  return Fq(to, std::move(*x));
}

bool Tower::in_subfield(const Fq& e, u32 subdeg) const {
  if (e.lv->deg == subdeg) return true;
  if (e.lv->deg % subdeg != 0) return false;
  const Embedding& em = embedding(subdeg, e.lv->deg);
  return em.down.solve(e.c).has_value();
}

Fq Tower::frob_q(const Fq& e, u32 times) const {
  return frobenius(e, n_ * times);
}

}  // namespace jac3
