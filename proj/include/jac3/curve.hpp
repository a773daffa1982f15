#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jac3/bipoly.hpp"
#include "jac3/field.hpp"
#include "jac3/series.hpp"

namespace jac3 {

// homogeneous trivariate form of fixed degree, dense coefficients
struct Form3 {
  const Level* lv = nullptr;
  u32 d = 0;
  std::vector<Fq> c;  // indexed by idx(i, j): coefficient of x^i y^j z^{d-i-j}

  Form3() = default;
  Form3(const Level* level, u32 degree)
      : lv(level), d(degree), c(count(degree), level->zero()) {}

  static u32 count(u32 degree) { return (degree + 1) * (degree + 2) / 2; }
  // monomials ordered by x-exponent, then y-exponent
  u32 idx(u32 i, u32 j) const {
    JAC3_CHECK(i + j <= d, "monomial out of range");
    // sum_{t<i} (d - t + 1) + j
    return i * (d + 1) - i * (i - 1) / 2 + j;
  }
  const Fq& get(u32 i, u32 j) const { return c[idx(i, j)]; }
  void set(u32 i, u32 j, const Fq& v) { c[idx(i, j)] = v; }

  bool is_zero() const {
    for (const Fq& e : c)
      if (!e.is_zero()) return false;
    return true;
  }
  Fq eval(const Fq& x, const Fq& y, const Fq& z) const;
  Form3 partial(u32 var) const;  // 0 = x, 1 = y, 2 = z
  Form3 operator+(const Form3& o) const;
  Form3 operator-() const;
  Form3 operator*(const Form3& o) const;
  Form3 scale(const Fq& s) const;
  bool operator==(const Form3& o) const { return d == o.d && c == o.c; }

  // affine charts as bivariate polynomials; inner/outer variables noted
  BiPoly chart_z() const;  // f(x, y) = F(x, y, 1), inner x, outer y
  BiPoly chart_y() const;  // f(x, z) = F(x, 1, z), inner x, outer z
  BiPoly chart_x() const;  // f(y, z) = F(1, y, z), inner y, outer z
  static Form3 from_chart_z(const BiPoly& f, u32 degree);
};

Form3 base_change(const Tower& tw, const Form3& F, const Level* to);

// projective point, kept normalized: first nonzero coordinate equals one
struct Pt3 {
  Fq x, y, z;
  void normalize();
};
bool pt_eq(const Pt3& a, const Pt3& b);
bool pt_less(const Pt3& a, const Pt3& b);
Pt3 pt_frobenius(const Pt3& P, u32 times);  // componentwise x -> x^{p^times}
std::string pt_repr(const Pt3& P);

// closed point of the curve over the working base field
struct Place {
  u32 rdeg = 0;  // residue degree over the working base
  Pt3 rep;       // canonical representative, coordinates in level n*w*rdeg
};
bool place_eq(const Place& a, const Place& b);
bool place_less(const Place& a, const Place& b);
std::string place_repr(const Place& P);

struct Divisor {
  std::vector<std::pair<Place, i64>> terms;  // sorted, nonzero multiplicities

  void add(const Place& P, i64 m);
  i64 mult_of(const Place& P) const;
  i64 degree() const;
  bool is_effective() const;
  bool is_zero() const { return terms.empty(); }
  Divisor operator+(const Divisor& o) const;
  Divisor operator-(const Divisor& o) const;
  Divisor operator*(i64 k) const;
  bool operator==(const Divisor& o) const;
};
std::string divisor_repr(const Divisor& D);
// greatest common effective sub-divisor
Divisor divisor_gcd(const Divisor& A, const Divisor& B);

// local analytic parametrization at a place: all three homogeneous
// coordinates as series in a uniformizer, one of them constant one
struct LocalPar {
  u32 prec = 0;
  Series<Fq> x, y, z;
  LocalPar(const Series<Fq>& a, const Series<Fq>& b, const Series<Fq>& c)
      : prec(a.prec), x(a), y(b), z(c) {}
};

// smooth plane quartic over its working base field
struct CurveCtx {
  Tower& tw;
  u32 w;            // extension multiplier: working base is F_{q^w}
  const Level* kb;  // level of absolute degree base_deg * w
  Form3 F;          // defined over kb
  u64 seed;

  std::map<u32, Form3> f_lift;                   // F over bigger levels
  std::map<u32, std::vector<Place>> place_pool;  // enumerated places per degree
  std::map<std::string, LocalPar> local_cache;
  std::map<u32, FpSolver> scalar_cache;  // coordinates over kb, keyed by level degree

  CurveCtx(Tower& tower, const Form3& form, u32 ext = 1, u64 sd = 1);

  const Level* level_of(u32 rdeg);        // level n*w*rdeg
  const Form3& F_at(const Level* L);      // cached base change
  bool on_curve(const Pt3& P);
  Fq sigma_coord(const Fq& e, u32 j = 1) const;  // arithmetic Frobenius x -> x^{q^j}

  // orbit size of a point under the working-base Frobenius
  u32 point_degree(const Pt3& P) const;
};

// decision: smooth projective plane quartic; witness holds a singular point
struct SmoothReport {
  bool smooth = false;
  bool irreducible_checked = false;
  std::optional<Pt3> witness;
};
SmoothReport check_smooth(CurveCtx& ctx);

// rational points over F_{(q^w)^m}, enumerated chart by chart
std::vector<Pt3> points_over(CurveCtx& ctx, u32 m);

// closed points of exact degree rdeg (cached)
const std::vector<Place>& places_of_degree(CurveCtx& ctx, u32 rdeg);

// canonicalize a geometric point (coordinates in a level over kb)
Place make_place(CurveCtx& ctx, const Pt3& P);

// sigma action and base change on places and divisors
Place sigma_place(CurveCtx& ctx, const Place& P, u32 j = 1);
Divisor sigma_divisor(CurveCtx& ctx, const Divisor& D, u32 j = 1);
// interpret a divisor of src inside dst, where src base divides dst base
Divisor transfer_divisor(CurveCtx& src, CurveCtx& dst, const Divisor& D);
// split a single place over the larger base
std::vector<Place> transfer_place(CurveCtx& src, CurveCtx& dst, const Place& P);

// local parametrization at prec coefficients (cached, extends on demand)
const LocalPar& local_par(CurveCtx& ctx, const Place& P, u32 prec);

// valuation at P of a form (relative to the standard chart trivialization)
i64 valuation_of_form(CurveCtx& ctx, const Place& P, const Form3& g);

// series expansion of a form along the local parametrization at P
Series<Fq> form_series_at(CurveCtx& ctx, const Place& P, const Form3& g, u32 prec);

// intersection divisor of the curve with a form; checks the degree identity
Divisor divisor_of_form(CurveCtx& ctx, const Form3& g);

// divisor of a rational function given as a ratio of equal-degree forms
Divisor divisor_of_ratio(CurveCtx& ctx, const Form3& num, const Form3& den);

// coordinates of x in the power basis of gen(level of x) over kb
std::vector<Fq> kb_coords(CurveCtx& ctx, const Fq& x);

}  // namespace jac3
