#pragma once
#include <vector>

#include "terp/core/matrix.hpp"

namespace terp {

// Linear subspace of F^n, stored as a reduced row echelon basis.
template <class F>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t n) : n_(n), B_(0, n) {}

  static Subspace span(const Matrix<F>& rows, const Tol& tol = {}) {
    Subspace s(rows.cols());
    auto e = rref(rows, tol);
    s.B_ = std::move(e.R);
    s.piv_ = std::move(e.pivots);
    s.min_pivot_ = e.min_pivot;
    return s;
  }
  static Subspace span(std::size_t n, const std::vector<Vec<F>>& rows, const Tol& tol = {}) {
    return span(Matrix<F>::from_rows(n, rows), tol);
  }
  static Subspace full(std::size_t n) { return span(Matrix<F>::identity(n)); }
  static Subspace coordinate(std::size_t n, const std::vector<std::size_t>& idx) {
    Matrix<F> m(0, n);
    for (auto i : idx) {
      Vec<F> v(n, F(0));
      v[i] = F(1);
      m.append_row(v);
    }
    return span(m);
  }

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return B_.rows(); }
  const Matrix<F>& basis() const { return B_; }
  const std::vector<std::size_t>& pivots() const { return piv_; }
  Vec<F> vector(std::size_t k) const { return B_.row(k); }
  double min_pivot() const { return min_pivot_; }

  // Residual of v after reduction against the basis.
  Vec<F> reduce(Vec<F> v) const {
    for (std::size_t k = 0; k < dim(); ++k) {
      F c = v[piv_[k]];
      if (field_traits<F>::is_zero(c)) continue;
      for (std::size_t j = 0; j < n_; ++j) v[j] -= c * B_(k, j);
    }
    return v;
  }
  bool contains(const Vec<F>& v, const Tol& tol = {}) const {
    double scale = 1.0;
    if constexpr (!is_exact_v<F>) {
      scale = 0;
      for (const auto& x : v) scale = std::max(scale, std::abs(x));
      if (scale == 0) return true;
    }
    return vec_is_zero(reduce(v), tol, scale);
  }
  bool contains(const Subspace& o, const Tol& tol = {}) const {
    for (std::size_t k = 0; k < o.dim(); ++k)
      if (!contains(o.vector(k), tol)) return false;
    return true;
  }
  bool equals(const Subspace& o, const Tol& tol = {}) const {
    if (n_ != o.n_ || dim() != o.dim()) return false;
    if constexpr (is_exact_v<F>) return B_ == o.B_;
    else return contains(o, tol);
  }
  // Coefficients of v in the stored basis (v assumed to lie in the span).
  Vec<F> coords(const Vec<F>& v) const {
    Vec<F> c(dim());
    for (std::size_t k = 0; k < dim(); ++k) c[k] = v[piv_[k]];
    return c;
  }

  Subspace sum(const Subspace& o, const Tol& tol = {}) const {
    Matrix<F> m = B_;
    for (std::size_t k = 0; k < o.dim(); ++k) m.append_row(o.vector(k));
    return span(m, tol);
  }
  // Rows c with c . b = 0 for every b in the subspace (bilinear, no conjugation).
  Matrix<F> annihilator(const Tol& tol = {}) const {
    if (dim() == 0) return Matrix<F>::identity(n_);
    return nullspace(B_, tol);
  }
  Subspace intersect(const Subspace& o, const Tol& tol = {}) const {
    if (dim() == 0 || o.dim() == 0) return Subspace(n_);
    Matrix<F> C = o.annihilator(tol);
    if (C.rows() == 0) return *this;
    Matrix<F> x = nullspace(C * B_.transpose(), tol);
    return span(x * B_, tol);
  }
  // Image under v -> M v (M is m x n).
  Subspace image(const Matrix<F>& M, const Tol& tol = {}) const {
    if (dim() == 0) return Subspace(M.rows());
    return span(B_ * M.transpose(), tol);
  }
  // {v in F^n : M v in S} for M : F^n -> F^m.
  static Subspace preimage(const Matrix<F>& M, const Subspace& S, const Tol& tol = {}) {
    Matrix<F> C = S.annihilator(tol);
    if (C.rows() == 0) return full(M.cols());
    return span(nullspace(C * M, tol), tol);
  }
  Subspace conjugate(const Tol& tol = {}) const { return span(B_.conjugate(), tol); }

 private:
  std::size_t n_ = 0;
  Matrix<F> B_;
  std::vector<std::size_t> piv_;
  double min_pivot_ = std::numeric_limits<double>::infinity();
};

// Vectors of `big` completing a basis of `small` (small assumed contained in big).
template <class F>
std::vector<Vec<F>> complement_basis(const Subspace<F>& big, const Subspace<F>& small, const Tol& tol = {}) {
  std::vector<Vec<F>> out;
  Subspace<F> cur = small;
  for (std::size_t k = 0; k < big.dim(); ++k) {
    Vec<F> v = big.vector(k);
    if (cur.contains(v, tol)) continue;
    out.push_back(v);
    cur = cur.sum(Subspace<F>::span(big.ambient(), {v}), tol);
  }
  return out;
}

}  // namespace terp
