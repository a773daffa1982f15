#include "jac3/quadform.hpp"

namespace jac3 {

bool QuadForm::is_zero() const {
  for (const Fq& v : c)
    if (!v.is_zero()) return false;
  return true;
}

Fq QuadForm::eval(const std::array<Fq, 4>& z) const {
  Fq acc = lv->zero();
  for (u32 i = 0; i < 4; ++i)
    for (u32 j = i; j < 4; ++j) acc = acc + get(i, j) * z[i] * z[j];
  return acc;
}

Fq QuadForm::polar(const std::array<Fq, 4>& u, const std::array<Fq, 4>& v) const {
  std::array<Fq, 4> s{u[0] + v[0], u[1] + v[1], u[2] + v[2], u[3] + v[3]};
  return eval(s) - eval(u) - eval(v);
}

namespace {

std::array<Fq, 4> basis_vec(const Level* lv, u32 i) {
  std::array<Fq, 4> e{lv->zero(), lv->zero(), lv->zero(), lv->zero()};
  e[i] = lv->one();
  return e;
}

bool is_square(const Fq& x) {
  Big e = (x.lv->card() - 1) / 2;
  return x.pow(e).is_one();
}

}  // namespace

QuadClass classify(const QuadForm& Q) {
  const Level* lv = Q.lv;
  QuadClass out;
  out.invariant = lv->zero();
  Mat<Fq> B(lv->zero(), 4, 4);
  for (u32 i = 0; i < 4; ++i)
    for (u32 j = 0; j < 4; ++j)
      B.at(i, j) = i == j ? Q.get(i, i) + Q.get(i, i) : Q.get(std::min(i, j), std::max(i, j));
  if (lv->p != 2) {
    Fq d = det(B);
    if (d.is_zero()) return out;
    out.nondegenerate = true;
    out.invariant = d;
    out.invariant_bit = is_square(d) ? 0 : 1;
    out.split = out.invariant_bit == 0;
    return out;
  }
  // characteristic two: the polar form is alternating; reduce symplectically
  if (rank(B) != 4) return out;
  out.nondegenerate = true;
  std::vector<std::array<Fq, 4>> vecs{basis_vec(lv, 0), basis_vec(lv, 1), basis_vec(lv, 2),
                                      basis_vec(lv, 3)};
  Fq arf = lv->zero();
  while (!vecs.empty()) {
    std::array<Fq, 4> v = vecs.front();
    vecs.erase(vecs.begin());
    size_t wi = vecs.size();
    for (size_t i = 0; i < vecs.size(); ++i)
      if (!Q.polar(v, vecs[i]).is_zero()) {
        wi = i;
        break;
      }
    JAC3_CHECK(wi < vecs.size(), "polar form degenerated during reduction");
    std::array<Fq, 4> w = vecs[wi];
    vecs.erase(vecs.begin() + (long)wi);
    Fq s = Q.polar(v, w).inv();
    for (Fq& e : w) e = e * s;
    for (auto& u : vecs) {
      Fq a = Q.polar(u, w), b = Q.polar(u, v);
      for (u32 k = 0; k < 4; ++k) u[k] = u[k] + a * v[k] + b * w[k];
    }
    arf = arf + Q.eval(v) * Q.eval(w);
  }
  out.invariant = arf;
  out.invariant_bit = abs_trace(arf);
  out.split = out.invariant_bit == 0;
  return out;
}

QuadForm pullback(const QuadForm& Q, const Mat<Fq>& T) {
  JAC3_CHECK(T.rows == 4 && T.cols == 4, "substitution must be four by four");
  QuadForm R(Q.lv);
  for (u32 col_i = 0; col_i < 4; ++col_i) {
    std::array<Fq, 4> ti{T.at(0, col_i), T.at(1, col_i), T.at(2, col_i), T.at(3, col_i)};
    Fq qi = Q.eval(ti);
    R.set(col_i, col_i, R.get(col_i, col_i) + qi);
    for (u32 col_j = col_i + 1; col_j < 4; ++col_j) {
      std::array<Fq, 4> tj{T.at(0, col_j), T.at(1, col_j), T.at(2, col_j), T.at(3, col_j)};
      R.set(col_i, col_j, R.get(col_i, col_j) + Q.polar(ti, tj));
    }
  }
  return R;
}

bool has_isotropic_plane(const QuadForm& Q) {
  const Level* lv = Q.lv;
  JAC3_CHECK(lv->card() <= 64, "exhaustive plane search only over small fields");
  u64 q = (u64)lv->card();
  u64 seen = 0;
  bool found = false;
  // reduced echelon bases: pivot columns p0 < p1, free entries elsewhere
  for (u32 p0 = 0; p0 < 4; ++p0)
    for (u32 p1 = p0 + 1; p1 < 4; ++p1) {
      std::vector<u32> free0, free1;  // free positions in each row
      for (u32 j = 0; j < 4; ++j) {
        if (j == p0 || j == p1) continue;
        if (j > p0) free0.push_back(j);
        if (j > p1) free1.push_back(j);
      }
      u64 total = 1;
      for (size_t k = 0; k < free0.size() + free1.size(); ++k) total *= q;
      for (u64 mask = 0; mask < total; ++mask) {
        std::array<Fq, 4> u{lv->zero(), lv->zero(), lv->zero(), lv->zero()};
        std::array<Fq, 4> v = u;
        u[p0] = lv->one();
        v[p1] = lv->one();
        u64 m = mask;
        for (u32 j : free0) {
          u[j] = lv->from_index(m % q);
          m /= q;
        }
        for (u32 j : free1) {
          v[j] = lv->from_index(m % q);
          m /= q;
        }
        ++seen;
        if (Q.eval(u).is_zero() && Q.eval(v).is_zero() && Q.polar(u, v).is_zero()) found = true;
      }
    }
  u64 expect = (q * q + 1) * (q * q + q + 1);
  JAC3_CHECK(seen == expect, "plane enumeration miscounted");
  return found;
}

QuadForm base_change_quad(Tower& tw, const QuadForm& Q, const Level* to) {
  QuadForm R(to);
  for (u32 k = 0; k < 10; ++k) R.c[k] = tw.embed(Q.c[k], to);
  return R;
}

std::optional<QuadForm> quadric_through(const Level* lv,
                                        const std::vector<std::array<Fq, 4>>& pts) {
  Mat<Fq> M(lv->zero(), (u32)pts.size(), 10);
  for (u32 r = 0; r < (u32)pts.size(); ++r)
    for (u32 i = 0; i < 4; ++i)
      for (u32 j = i; j < 4; ++j) M.at(r, QuadForm::idx(i, j)) = pts[r][i] * pts[r][j];
  std::vector<std::vector<Fq>> ker = kernel(M);
  JAC3_CHECK(!ker.empty(), "no quadric through the given points");
  if (ker.size() > 1) return std::nullopt;
  QuadForm Q(lv);
  Q.c = ker[0];
  for (const Fq& e : Q.c)
    if (!e.is_zero()) {
      Fq s = e.inv();
      for (Fq& v : Q.c) v = v * s;
      break;
    }
  return Q;
}

TwistedModel descend_quadric(const Level* lv) {
  QuadForm Q(lv);
  u64 q = (u64)lv->card();
  if (lv->p != 2) {
    Fq d = lv->zero();
    for (u64 n = 1; n < q; ++n) {
      Fq e = lv->from_index(n);
      if (!is_square(e)) {
        d = e;
        break;
      }
    }
    JAC3_CHECK(!d.is_zero(), "no nonsquare in the base field");
    // on y = (1, t + t', g(t - t'), t t') with g^2 = d the products of two
    // ruling parameters satisfy d y1^2 - y2^2 - 4 d y0 y3 = 0
    Q.set(1, 1, d);
    Q.set(2, 2, -lv->one());
    Q.set(0, 3, -(lv->from_int(4) * d));
    return {Q, d};
  }
  Fq del = lv->zero();
  for (u64 n = 1; n < q; ++n) {
    Fq e = lv->from_index(n);
    if (abs_trace(e) == 1) {
      del = e;
      break;
    }
  }
  JAC3_CHECK(!del.is_zero(), "no trace-one element in the base field");
  // on y = (1, t + t', l t + (l + 1) t', t t') with l^2 + l = del the ruling
  // parameters satisfy y2^2 + y1 y2 + del y1^2 + y0 y3 = 0
  Q.set(2, 2, lv->one());
  Q.set(1, 2, lv->one());
  Q.set(1, 1, del);
  Q.set(0, 3, lv->one());
  return {Q, del};
}

}  // namespace jac3
