#pragma once
#include <optional>
#include <vector>

#include "jac3/field.hpp"

namespace jac3 {

template <class E>
struct Mat {
  E z;
  u32 rows = 0, cols = 0;
  std::vector<E> a;

  Mat(const E& zero, u32 r, u32 c) : z(zero), rows(r), cols(c), a((size_t)r * c, zero) {}
  E& at(u32 i, u32 j) { return a[(size_t)i * cols + j]; }
  const E& at(u32 i, u32 j) const { return a[(size_t)i * cols + j]; }

  static Mat identity(const E& zero, u32 n) {
    Mat m(zero, n, n);
    E one = one_like(zero);
    for (u32 i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }
  Mat operator*(const Mat& o) const {
    JAC3_CHECK(cols == o.rows, "matrix shape mismatch");
    Mat r(z, rows, o.cols);
    for (u32 i = 0; i < rows; ++i)
      for (u32 k = 0; k < cols; ++k) {
        const E& v = at(i, k);
        if (v.is_zero()) continue;
        for (u32 j = 0; j < o.cols; ++j) r.at(i, j) = r.at(i, j) + v * o.at(k, j);
      }
    return r;
  }
  std::vector<E> mul_vec(const std::vector<E>& v) const {
    JAC3_CHECK(v.size() == cols, "matrix/vector shape mismatch");
    std::vector<E> r(rows, z);
    for (u32 i = 0; i < rows; ++i)
      for (u32 j = 0; j < cols; ++j)
        if (!at(i, j).is_zero()) r[i] = r[i] + at(i, j) * v[j];
    return r;
  }
};

// in-place reduced row echelon form; returns rank, fills pivot columns
template <class E>
u32 rref(Mat<E>& m, std::vector<u32>* pivot_cols = nullptr) {
  u32 r = 0;
  for (u32 j = 0; j < m.cols && r < m.rows; ++j) {
    u32 piv = r;
    while (piv < m.rows && m.at(piv, j).is_zero()) ++piv;
    if (piv == m.rows) continue;
    if (piv != r)
      for (u32 k = 0; k < m.cols; ++k) std::swap(m.at(piv, k), m.at(r, k));
    E s = m.at(r, j).inv();
    for (u32 k = j; k < m.cols; ++k) m.at(r, k) = m.at(r, k) * s;
    for (u32 i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, j).is_zero()) continue;
      E f = m.at(i, j);
      for (u32 k = j; k < m.cols; ++k) m.at(i, k) = m.at(i, k) - f * m.at(r, k);
    }
    if (pivot_cols) pivot_cols->push_back(j);
    ++r;
  }
  return r;
}

template <class E>
u32 rank(Mat<E> m) {
  return rref(m);
}

// basis of the right kernel {v : m v = 0}, one vector per free column
template <class E>
std::vector<std::vector<E>> kernel(Mat<E> m) {
  std::vector<u32> piv;
  rref(m, &piv);
  std::vector<bool> is_piv(m.cols, false);
  for (u32 j : piv) is_piv[j] = true;
  std::vector<std::vector<E>> basis;
  E one = one_like(m.z);
  for (u32 j = 0; j < m.cols; ++j) {
    if (is_piv[j]) continue;
    std::vector<E> v(m.cols, m.z);
    v[j] = one;
    for (u32 r = 0; r < piv.size(); ++r) v[piv[r]] = -m.at(r, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

// one solution of m x = rhs, or nullopt when inconsistent
template <class E>
std::optional<std::vector<E>> solve(const Mat<E>& m, const std::vector<E>& rhs) {
  JAC3_CHECK(rhs.size() == m.rows, "solve shape mismatch");
  Mat<E> aug(m.z, m.rows, m.cols + 1);
  for (u32 i = 0; i < m.rows; ++i) {
    for (u32 j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = rhs[i];
  }
  std::vector<u32> piv;
  u32 r = rref(aug, &piv);
  if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
  std::vector<E> x(m.cols, m.z);
  for (u32 i = 0; i < r; ++i) x[piv[i]] = aug.at(i, m.cols);
  return x;
}

// determinant by Gaussian elimination; coefficients must form a field
template <class E>
E det(Mat<E> m) {
  JAC3_CHECK(m.rows == m.cols, "det of non-square matrix");
  u32 n = m.rows;
  E d = one_like(m.z);
  for (u32 j = 0; j < n; ++j) {
    u32 piv = j;
    while (piv < n && m.at(piv, j).is_zero()) ++piv;
    if (piv == n) return m.z;
    if (piv != j) {
      for (u32 k = 0; k < n; ++k) std::swap(m.at(piv, k), m.at(j, k));
      d = -d;
    }
    d = d * m.at(j, j);
    E s = m.at(j, j).inv();
    for (u32 i = j + 1; i < n; ++i) {
      if (m.at(i, j).is_zero()) continue;
      E f = m.at(i, j) * s;
      for (u32 k = j; k < n; ++k) m.at(i, k) = m.at(i, k) - f * m.at(j, k);
    }
  }
  return d;
}

// fraction-free determinant (Bareiss); needs only exact division in E,
// provided through divexact(E, E); used for matrices over polynomial rings
template <class E>
E det_bareiss(Mat<E> m, const E& one) {
  JAC3_CHECK(m.rows == m.cols, "det of non-square matrix");
  u32 n = m.rows;
  if (n == 0) return one;
  E denom = one;
  bool neg = false;
  for (u32 j = 0; j + 1 < n; ++j) {
    u32 piv = j;
    while (piv < n && m.at(piv, j).is_zero()) ++piv;
    if (piv == n) return m.z;
    if (piv != j) {
      for (u32 k = 0; k < n; ++k) std::swap(m.at(piv, k), m.at(j, k));
      neg = !neg;
    }
    for (u32 i = j + 1; i < n; ++i) {
      for (u32 k = j + 1; k < n; ++k) {
        E num = m.at(i, k) * m.at(j, j) - m.at(i, j) * m.at(j, k);
        m.at(i, k) = divexact(num, denom);
      }
      m.at(i, j) = m.z;
    }
    denom = m.at(j, j);
  }
  E d = m.at(n - 1, n - 1);
  return neg ? -d : d;
}

}  // namespace jac3
