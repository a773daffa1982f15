#pragma once

#include <array>
#include <optional>

#include "jac3/field.hpp"
#include "jac3/linalg.hpp"

namespace jac3 {

// quadratic form on four variables; coefficients ordered
// x0^2, x0x1, x0x2, x0x3, x1^2, x1x2, x1x3, x2^2, x2x3, x3^2
struct QuadForm {
  const Level* lv;
  std::vector<Fq> c;

  explicit QuadForm(const Level* level) : lv(level), c(10, level->zero()) {}

  static u32 idx(u32 i, u32 j) {  // i <= j
    static const u32 base[4] = {0, 4, 7, 9};
    return base[i] + (j - i);
  }
  const Fq& get(u32 i, u32 j) const { return c[idx(i, j)]; }
  void set(u32 i, u32 j, const Fq& v) { c[idx(i, j)] = v; }
  bool is_zero() const;

  Fq eval(const std::array<Fq, 4>& z) const;
  // polar form Q(u+v) - Q(u) - Q(v)
  Fq polar(const std::array<Fq, 4>& u, const std::array<Fq, 4>& v) const;
};

struct QuadClass {
  bool nondegenerate = false;
  bool split = false;
  Fq invariant;            // discriminant in odd characteristic, Arf element in two
  u32 invariant_bit = 0;   // 1 means nonsquare, respectively trace one
};

// smoothness and ruling class of the quadric surface Q = 0 in P^3
QuadClass classify(const QuadForm& Q);

// Q composed with the linear substitution z -> T z
QuadForm pullback(const QuadForm& Q, const Mat<Fq>& T);

// exhaustive search for a plane in k^4 on which Q vanishes identically
bool has_isotropic_plane(const QuadForm& Q);

QuadForm base_change_quad(Tower& tw, const QuadForm& Q, const Level* to);

// unique quadric through a point set: one-dimensional kernel of the matrix
// evaluating the ten quadric monomials at the points; nullopt when the points
// leave extra freedom, an error when no quadric contains them all
std::optional<QuadForm> quadric_through(const Level* lv,
                                        const std::vector<std::array<Fq, 4>>& pts);

// base-field model of a quadric whose two rulings are exchanged by the
// quadratic Frobenius, with the unit selecting the twist: the least nonsquare
// in odd characteristic, the least trace-one element in characteristic two
struct TwistedModel {
  QuadForm quad;
  Fq unit;
};

TwistedModel descend_quadric(const Level* lv);

}  // namespace jac3
