#pragma once
#include <vector>

#include "jac3/poly.hpp"

namespace jac3 {

// Truncated power series: exactly prec stored coefficients, index = exponent.
// Binary operations truncate to the smaller precision.
template <class E>
struct Series {
  E z;
  u32 prec = 0;
  std::vector<E> c;

  Series(const E& zero, u32 precision) : z(zero), prec(precision), c(precision, zero) {
    JAC3_CHECK(precision >= 1, "series precision must be positive");
  }
  static Series constant(const E& v, u32 precision) {
    Series s(zero_like(v), precision);
    s.c[0] = v;
    return s;
  }
  static Series variable(const E& one, u32 precision) {
    Series s(zero_like(one), precision);
    if (precision >= 2) s.c[1] = one;
    return s;
  }
  static Series from_poly(const Poly<E>& f, u32 precision) {
    Series s(f.z, precision);
    for (u32 i = 0; i < precision && i < f.c.size(); ++i) s.c[i] = f.c[i];
    return s;
  }

  bool is_zero() const {
    for (const E& e : c)
      if (!e.is_zero()) return false;
    return true;
  }
  // smallest index with nonzero coefficient, or prec when none visible
  u32 valuation() const {
    for (u32 i = 0; i < prec; ++i)
      if (!c[i].is_zero()) return i;
    return prec;
  }
  Series trunc(u32 np) const {
    JAC3_CHECK(np <= prec, "cannot extend series precision");
    Series s(z, np);
    for (u32 i = 0; i < np; ++i) s.c[i] = c[i];
    return s;
  }

  Series operator-() const {
    Series s = *this;
    for (E& e : s.c) e = -e;
    return s;
  }
  Series operator+(const Series& o) const {
    u32 np = std::min(prec, o.prec);
    Series s(z, np);
    for (u32 i = 0; i < np; ++i) s.c[i] = c[i] + o.c[i];
    return s;
  }
  Series operator-(const Series& o) const { return *this + (-o); }
  Series operator*(const Series& o) const {
    u32 np = std::min(prec, o.prec);
    Series s(z, np);
    for (u32 i = 0; i < np; ++i) {
      if (c[i].is_zero()) continue;
      for (u32 j = 0; i + j < np; ++j) {
        if (o.c[j].is_zero()) continue;
        s.c[i + j] = s.c[i + j] + c[i] * o.c[j];
      }
    }
    return s;
  }
  bool operator==(const Series& o) const { return prec == o.prec && c == o.c; }

  // constant term must be a unit
  Series inv() const {
    JAC3_CHECK(!c[0].is_zero(), "series inverse needs unit constant term");
    Series s(z, prec);
    E i0 = c[0].inv();
    s.c[0] = i0;
    for (u32 n = 1; n < prec; ++n) {
      E acc = z;
      for (u32 k = 1; k <= n; ++k) acc = acc + c[k] * s.c[n - k];
      s.c[n] = -(acc * i0);
    }
    return s;
  }
  Series operator/(const Series& o) const { return *this * o.inv(); }

  // multiply by the k-th power of the variable, shifting out the top
  Series shift_up(u32 k) const {
    Series s(z, prec);
    for (u32 i = 0; i + k < prec; ++i) s.c[i + k] = c[i];
    return s;
  }
};

template <class E>
Series<E> zero_like(const Series<E>& s) {
  return Series<E>(s.z, s.prec);
}
template <class E>
Series<E> one_like(const Series<E>& s) {
  return Series<E>::constant(one_like(s.z), s.prec);
}

// evaluate a polynomial with series coefficients at a series argument
template <class E>
Series<E> eval_series(const Poly<Series<E>>& f, const Series<E>& x) {
  Series<E> acc = zero_like(x);
  for (size_t i = f.c.size(); i-- > 0;) acc = acc * x + f.c[i].trunc(x.prec);
  return acc;
}

// Newton lift of a simple root: y0 with G(y0) = 0 mod u and G'(y0) a unit.
// Returns the series root at the precision of the coefficients of G.
template <class E>
Series<E> series_root(const Poly<Series<E>>& G, const E& y0) {
  JAC3_CHECK(!G.is_zero() && G.deg() >= 1, "series_root needs a nonconstant polynomial");
  u32 prec = G.c[0].prec;
  Poly<Series<E>> Gp = G.derivative();
  Series<E> y = Series<E>::constant(y0, prec);
  {
    Series<E> d = eval_series(Gp, y);
    JAC3_CHECK(!d.c[0].is_zero(), "series_root needs a simple root");
    Series<E> v = eval_series(G, y);
    JAC3_CHECK(v.c[0].is_zero(), "series_root seed is not a root");
  }
  u32 have = 1;
  while (have < prec) {
    y = y - eval_series(G, y) / eval_series(Gp, y);
    have *= 2;
  }
  return y;
}

}  // namespace jac3
