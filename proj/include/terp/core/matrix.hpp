#pragma once
#include <algorithm>
#include <cassert>
#include <cstddef>
#include <limits>
#include <vector>

#include "terp/core/field.hpp"

namespace terp {

template <class F>
using Vec = std::vector<F>;

template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), d_(r * c, F(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }
  static Matrix from_rows(std::size_t cols, const std::vector<Vec<F>>& rows) {
    Matrix m(0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  F& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

  Vec<F> row(std::size_t i) const { return Vec<F>(d_.begin() + i * c_, d_.begin() + (i + 1) * c_); }
  Vec<F> col(std::size_t j) const {
    Vec<F> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void append_row(const Vec<F>& v) {
    assert(v.size() == c_);
    d_.insert(d_.end(), v.begin(), v.end());
    ++r_;
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < c_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  Matrix adjoint() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = fconj((*this)(i, j));
    return t;
  }
  Matrix conjugate() const {
    Matrix t = *this;
    for (auto& x : t.d_) x = fconj(x);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.c_ == b.r_);
    Matrix m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const F& x = a(i, k);
        if (field_traits<F>::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
      }
    return m;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < a.d_.size(); ++k) a.d_[k] += b.d_[k];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < a.d_.size(); ++k) a.d_[k] -= b.d_[k];
    return a;
  }
  Matrix scaled(const F& s) const {
    Matrix m = *this;
    for (auto& x : m.d_) x *= s;
    return m;
  }
  Vec<F> apply(const Vec<F>& v) const {
    Vec<F> out(r_, F(0));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_; }

  double max_magnitude() const {
    double m = 0;
    for (const auto& x : d_) m = std::max(m, field_traits<F>::magnitude(x));
    return m;
  }
  bool is_zero(const Tol& tol = {}) const {
    if constexpr (is_exact_v<F>) {
      for (const auto& x : d_)
        if (!x.is_zero()) return false;
      return true;
    } else {
      return max_magnitude() <= tol.eps;
    }
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<F> d_;
};

template <class F>
struct Echelon {
  Matrix<F> R;                      // rank x cols, reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each row
  // Approximate mode diagnostics, relative to the largest input magnitude.
  double min_pivot = std::numeric_limits<double>::infinity();
  double max_rejected = 0;
  std::size_t rank() const { return pivots.size(); }
};

// Reduced row echelon form. Pivot of a row is its first nonzero column.
template <class F>
Echelon<F> rref(Matrix<F> m, const Tol& tol = {}) {
  Echelon<F> e;
  const std::size_t R = m.rows(), C = m.cols();
  double scale = 0, thresh = 0;
  if constexpr (!is_exact_v<F>) {
    scale = m.max_magnitude();
    thresh = tol.eps * scale;
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = R;
    if constexpr (is_exact_v<F>) {
      for (std::size_t i = r; i < R; ++i)
        if (!m(i, c).is_zero()) { p = i; break; }
    } else {
      double best = 0;
      for (std::size_t i = r; i < R; ++i) {
        double a = std::abs(m(i, c));
        if (a > best) { best = a; p = i; }
      }
      if (p != R && best <= thresh) {
        e.max_rejected = std::max(e.max_rejected, best / scale);
        for (std::size_t i = r; i < R; ++i) m(i, c) = F(0);
        p = R;
      } else if (p != R) {
        e.min_pivot = std::min(e.min_pivot, best / scale);
      }
    }
    if (p == R) continue;
    m.swap_rows(r, p);
    F inv = field_traits<F>::inv(m(r, c));
    for (std::size_t j = c; j < C; ++j) m(r, j) *= inv;
    m(r, c) = F(1);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r) continue;
      F f = m(i, c);
      if (field_traits<F>::is_zero(f)) continue;
      for (std::size_t j = c; j < C; ++j) m(i, j) -= f * m(r, j);
      m(i, c) = F(0);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.R = Matrix<F>(0, C);
  for (std::size_t i = 0; i < r; ++i) e.R.append_row(m.row(i));
  return e;
}

template <class F>
std::size_t rank(const Matrix<F>& m, const Tol& tol = {}) {
  return rref(m, tol).rank();
}

// Basis (as rows) of {x : m x = 0}.
template <class F>
Matrix<F> nullspace(const Matrix<F>& m, const Tol& tol = {}) {
  auto e = rref(m, tol);
  const std::size_t C = m.cols();
  std::vector<bool> is_pivot(C, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Matrix<F> out(0, C);
  for (std::size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    Vec<F> v(C, F(0));
    v[f] = F(1);
    for (std::size_t k = 0; k < e.rank(); ++k) v[e.pivots[k]] = -e.R(k, f);
    out.append_row(v);
  }
  return out;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m, const Tol& tol = {}) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InputError("inverse of non-square matrix");
  Matrix<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1);
  }
  auto e = rref(aug, tol);
  if (e.rank() < n || e.pivots[n - 1] != n - 1) throw MathError("Singular", "matrix is singular");
  Matrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.R(i, n + j);
  return inv;
}

template <class F>
bool vec_is_zero(const Vec<F>& v, const Tol& tol = {}, double scale = 1.0) {
  for (const auto& x : v) {
    if constexpr (is_exact_v<F>) {
      if (!x.is_zero()) return false;
    } else {
      if (std::abs(x) > tol.eps * scale) return false;
    }
  }
  return true;
}

}  // namespace terp
