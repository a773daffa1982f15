#pragma once
#include <utility>
#include <vector>

#include "jac3/field.hpp"

namespace jac3 {

// Dense univariate polynomial over a coefficient ring E.  A zero prototype is
// carried so elements can be minted for nested coefficient types.  Invariant:
// no trailing zero coefficients; the zero polynomial has an empty vector.
template <class E>
struct Poly {
  E z;
  std::vector<E> c;  // c[i] multiplies x^i

  explicit Poly(const E& zero) : z(zero) {}
  Poly(const E& zero, std::vector<E> cc) : z(zero), c(std::move(cc)) { norm(); }

  void norm() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  int deg() const { return (int)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_one() const { return c.size() == 1 && c[0] == one_coeff(); }
  E zero_coeff() const { return z; }
  E one_coeff() const { return one_like(z); }
  E coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : z; }
  const E& lc() const {
    JAC3_CHECK(!c.empty(), "lc of zero polynomial");
    return c.back();
  }

  static Poly constant(const E& v) {
    Poly r(zero_like(v));
    if (!v.is_zero()) r.c.push_back(v);
    return r;
  }
  // the monomial v * x^k
  static Poly monomial(const E& v, u32 k) {
    Poly r(zero_like(v));
    if (!v.is_zero()) {
      r.c.assign(k + 1, zero_like(v));
      r.c[k] = v;
    }
    return r;
  }

  Poly operator-() const {
    Poly r(z);
    r.c.reserve(c.size());
    for (const E& e : c) r.c.push_back(-e);
    return r;
  }
  Poly operator+(const Poly& o) const {
    Poly r(z);
    size_t n = std::max(c.size(), o.c.size());
    r.c.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      if (i < c.size() && i < o.c.size()) r.c.push_back(c[i] + o.c[i]);
      else if (i < c.size()) r.c.push_back(c[i]);
      else r.c.push_back(o.c[i]);
    }
    r.norm();
    return r;
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(z);
    Poly r(z);
    r.c.assign(c.size() + o.c.size() - 1, z);
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i].is_zero()) continue;
      for (size_t j = 0; j < o.c.size(); ++j) {
        if (o.c[j].is_zero()) continue;
        r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
      }
    }
    r.norm();
    return r;
  }
  bool operator==(const Poly& o) const { return c == o.c; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly scale(const E& s) const {
    Poly r(z);
    if (s.is_zero()) return r;
    r.c.reserve(c.size());
    for (const E& e : c) r.c.push_back(e * s);
    r.norm();
    return r;
  }
  Poly shift(u32 k) const {  // multiply by x^k
    if (is_zero() || k == 0) return *this;
    Poly r(z);
    r.c.assign(c.size() + k, z);
    for (size_t i = 0; i < c.size(); ++i) r.c[i + k] = c[i];
    return r;
  }
  Poly derivative() const {
    Poly r(z);
    for (size_t i = 1; i < c.size(); ++i) {
      E e = z;
      for (size_t k = 0; k < i; ++k) e = e + c[i];  // i * c[i] in char p
      r.c.push_back(e);
    }
    r.norm();
    return r;
  }
};

template <class E>
Poly<E> zero_like(const Poly<E>& a) {
  return Poly<E>(a.z);
}
template <class E>
Poly<E> one_like(const Poly<E>& a) {
  return Poly<E>(a.z, {one_like(a.z)});
}

template <class E>
E eval(const Poly<E>& f, const E& x) {
  E acc = zero_like(x);
  for (size_t i = f.c.size(); i-- > 0;) acc = acc * x + f.c[i];
  return acc;
}

// quotient and remainder; coefficients must form a field
template <class E>
std::pair<Poly<E>, Poly<E>> divrem(const Poly<E>& a, const Poly<E>& b) {
  JAC3_CHECK(!b.is_zero(), "polynomial division by zero");
  if (a.deg() < b.deg()) return {Poly<E>(a.z), a};
  E lcinv = b.lc().inv();
  Poly<E> r = a;
  Poly<E> q(a.z);
  q.c.assign(a.deg() - b.deg() + 1, a.z);
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int k = r.deg() - b.deg();
    E f = r.lc() * lcinv;
    q.c[k] = f;
    for (int i = 0; i <= b.deg(); ++i) r.c[i + k] = r.c[i + k] - f * b.c[i];
    r.norm();
  }
  q.norm();
  return {q, r};
}

template <class E>
Poly<E> operator%(const Poly<E>& a, const Poly<E>& b) {
  return divrem(a, b).second;
}
template <class E>
Poly<E> operator/(const Poly<E>& a, const Poly<E>& b) {
  return divrem(a, b).first;
}

// exact division in E[x]; throws if the remainder is nonzero
template <class E>
Poly<E> divexact(const Poly<E>& a, const Poly<E>& b) {
  auto [q, r] = divrem(a, b);
  JAC3_CHECK(r.is_zero(), "inexact polynomial division");
  return q;
}

template <class E>
Poly<E> make_monic(const Poly<E>& a) {
  if (a.is_zero() || a.lc().is_one()) return a;
  return a.scale(a.lc().inv());
}

template <class E>
Poly<E> gcd(const Poly<E>& a, const Poly<E>& b) {
  Poly<E> x = a, y = b;
  while (!y.is_zero()) {
    Poly<E> r = x % y;
    x = y;
    y = r;
  }
  return make_monic(x);
}

// g = gcd, and u with u*a = g (mod m); enough for modular inverses
template <class E>
std::pair<Poly<E>, Poly<E>> half_egcd(const Poly<E>& a, const Poly<E>& m) {
  Poly<E> r0 = m, r1 = a;
  Poly<E> u0(a.z), u1 = one_like(a);
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    r0 = r1;
    r1 = r;
    Poly<E> u2 = u0 - q * u1;
    u0 = u1;
    u1 = u2;
  }
  if (!r0.is_zero() && !r0.lc().is_one()) {
    E s = r0.lc().inv();
    r0 = r0.scale(s);
    u0 = u0.scale(s);
  }
  return {r0, u0};
}

template <class E>
Poly<E> inv_mod(const Poly<E>& a, const Poly<E>& m) {
  auto [g, u] = half_egcd(a % m, m);
  JAC3_CHECK(g.deg() == 0, "not invertible modulo m");
  return (u % m).scale(g.c[0].inv());
}

template <class E>
Poly<E> mulmod(const Poly<E>& a, const Poly<E>& b, const Poly<E>& m) {
  return (a * b) % m;
}

template <class E>
Poly<E> powmod(Poly<E> base, Big e, const Poly<E>& m) {
  JAC3_CHECK(e >= 0, "negative exponent");
  Poly<E> acc = one_like(base) % m;
  base = base % m;
  while (e > 0) {
    if (boost::multiprecision::bit_test(e, 0)) acc = mulmod(acc, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return acc;
}

// substitute g for the variable of f
template <class E>
Poly<E> compose(const Poly<E>& f, const Poly<E>& g) {
  Poly<E> acc(f.z);
  for (size_t i = f.c.size(); i-- > 0;) acc = acc * g + Poly<E>::constant(f.c[i]);
  return acc;
}

}  // namespace jac3
