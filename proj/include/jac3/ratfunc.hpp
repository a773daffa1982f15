#pragma once
#include "jac3/poly.hpp"

namespace jac3 {

// Rational function num/den over a coefficient field E, kept reduced with a
// monic denominator.  Forms a field, so Poly<RatFunc<E>> and matrices over
// RatFunc<E> work with the generic routines.
template <class E>
struct RatFunc {
  Poly<E> num, den;

  explicit RatFunc(const E& zero)
      : num(zero), den(one_like(Poly<E>(zero))) {}
  RatFunc(Poly<E> n, Poly<E> d) : num(std::move(n)), den(std::move(d)) { reduce(); }
  static RatFunc of(const Poly<E>& n) { return RatFunc(n, one_like(n)); }

  void reduce() {
    JAC3_CHECK(!den.is_zero(), "rational function with zero denominator");
    if (num.is_zero()) {
      den = one_like(den);
      return;
    }
    Poly<E> g = gcd(num, den);
    if (g.deg() > 0) {
      num = divexact(num, g);
      den = divexact(den, g);
    }
    if (!den.lc().is_one()) {
      E s = den.lc().inv();
      num = num.scale(s);
      den = den.scale(s);
    }
  }

  bool is_zero() const { return num.is_zero(); }
  bool is_one() const { return den.is_one() && num.is_one(); }
  bool is_poly() const { return den.deg() == 0; }

  RatFunc operator-() const { return RatFunc(-num, den); }
  RatFunc operator+(const RatFunc& o) const {
    return RatFunc(num * o.den + o.num * den, den * o.den);
  }
  RatFunc operator-(const RatFunc& o) const {
    return RatFunc(num * o.den - o.num * den, den * o.den);
  }
  RatFunc operator*(const RatFunc& o) const { return RatFunc(num * o.num, den * o.den); }
  RatFunc inv() const {
    JAC3_CHECK(!num.is_zero(), "inverse of zero rational function");
    return RatFunc(den, num);
  }
  RatFunc operator/(const RatFunc& o) const { return *this * o.inv(); }
  bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
};

template <class E>
RatFunc<E> zero_like(const RatFunc<E>& a) {
  return RatFunc<E>(a.num.z);
}
template <class E>
RatFunc<E> one_like(const RatFunc<E>& a) {
  return RatFunc<E>::of(one_like(a.num));
}

// evaluate at a point of the coefficient field; den must not vanish there
template <class E>
E eval_at(const RatFunc<E>& f, const E& x) {
  E d = eval(f.den, x);
  JAC3_CHECK(!d.is_zero(), "pole in rational function evaluation");
  return eval(f.num, x) / d;
}

using RF = RatFunc<Fq>;

}  // namespace jac3
