#pragma once
#include <limits>

#include "terp/core/matrix.hpp"

namespace terp {

struct Signature {
  int pos = 0, neg = 0, zero = 0;
  // Approximate mode: smallest accepted pivot and largest rejected one, relative to max |h_ij|.
  double min_pivot = std::numeric_limits<double>::infinity();
  double max_rejected = 0;
  friend bool operator==(const Signature& a, const Signature& b) {
    return a.pos == b.pos && a.neg == b.neg && a.zero == b.zero;
  }
};

template <class F>
bool is_hermitian(const Matrix<F>& H, const Tol& tol = {}) {
  if (H.rows() != H.cols()) return false;
  return (H - H.adjoint()).is_zero(Tol{tol.eps * std::max(1.0, H.max_magnitude())});
}

// Inertia of a hermitian matrix by congruence diagonalisation.
template <class F>
Signature hermitian_signature(Matrix<F> H, const Tol& tol = {}) {
  if (!is_hermitian(H, tol)) throw MathError("NotHermitian", "matrix is not hermitian");
  const std::size_t n = H.rows();
  Signature s;
  double scale = H.max_magnitude(), thresh = tol.eps * scale;
  auto negligible = [&](const F& x) {
    if constexpr (is_exact_v<F>) return x.is_zero();
    else return std::abs(x) <= thresh;
  };
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    // pick the largest remaining diagonal entry (first nonzero in exact mode)
    std::size_t k = n;
    double best = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || negligible(H(i, i))) continue;
      double a = field_traits<F>::magnitude(H(i, i));
      if constexpr (is_exact_v<F>) { k = i; break; }
      if (a > best) { best = a; k = i; }
    }
    if (k == n) {
      // all remaining diagonal entries vanish: use e_i + conj(h_ij) e_j to create one
      std::size_t bi = n, bj = n;
      double bm = -1;
      for (std::size_t i = 0; i < n && (bi == n || !is_exact_v<F>); ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          if (done[i] || done[j] || negligible(H(i, j))) continue;
          double a = field_traits<F>::magnitude(H(i, j));
          if (a > bm) { bm = a; bi = i; bj = j; }
          if constexpr (is_exact_v<F>) break;
        }
      if (bi == n) break;
      F c = fconj(H(bi, bj));
      // column op: col_i += c col_j ; row op: row_i += conj(c) row_j
      for (std::size_t r = 0; r < n; ++r) H(r, bi) += c * H(r, bj);
      F cc = fconj(c);
      for (std::size_t q = 0; q < n; ++q) H(bi, q) += cc * H(bj, q);
      k = bi;
    }
    F p = H(k, k);
    double rel = field_traits<F>::magnitude(p) / (scale > 0 ? scale : 1.0);
    s.min_pivot = std::min(s.min_pivot, rel);
    (field_traits<F>::real_sign(p) > 0 ? s.pos : s.neg)++;
    done[k] = true;
    F pinv = field_traits<F>::inv(p);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      F f = H(i, k) * pinv;
      if (field_traits<F>::is_zero(f)) continue;
      F fc = fconj(f);
      for (std::size_t q = 0; q < n; ++q) H(i, q) -= f * H(k, q);
      for (std::size_t r = 0; r < n; ++r) H(r, i) -= fc * H(r, k);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!done[i]) {
      ++s.zero;
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) s.max_rejected = std::max(s.max_rejected, field_traits<F>::magnitude(H(i, j)) / (scale > 0 ? scale : 1.0));
    }
  return s;
}

}  // namespace terp
