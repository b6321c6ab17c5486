#pragma once
#include <vector>

#include "terp/core/subspace.hpp"

namespace terp {

// Monodromy weight filtration of a nilpotent endomorphism, centred at `center`.
// W_j = 0 for j < lo, W_j = everything for j > hi.
template <class F>
struct WeightFiltration {
  int lo = 0, hi = -1;
  std::size_t n = 0;
  std::vector<Subspace<F>> levels;  // levels[j - lo]
  Subspace<F> whole;                 // W_j for j > hi

  Subspace<F> at(int j) const {
    if (j < lo) return Subspace<F>(n);
    if (j > hi) return whole;
    return levels[j - lo];
  }
};

namespace detail {

template <class F>
Subspace<F> apply_power(const Matrix<F>& N, Subspace<F> S, int k, const Tol& tol) {
  for (int i = 0; i < k; ++i) S = S.image(N, tol);
  return S;
}

template <class F>
void fill_weight(const Matrix<F>& N, const Subspace<F>& U, const Subspace<F>& L, int c, int kmax,
                 WeightFiltration<F>& W, const Tol& tol) {
  auto set = [&](int j, const Subspace<F>& s) { W.levels[j - W.lo] = s; };
  int k = -1;
  for (int t = kmax; t >= 0; --t)
    if (!L.contains(apply_power(N, U, t, tol), tol)) { k = t; break; }
  if (k < 0) {  // U == L
    for (int j = c - kmax - 1; j <= c + kmax; ++j) set(j, L);
    return;
  }
  for (int j = c + k; j <= c + kmax; ++j) set(j, U);
  for (int j = c - kmax - 1; j <= c - k - 1; ++j) set(j, L);
  if (k == 0) return;
  Matrix<F> Nk = Matrix<F>::identity(N.rows());
  for (int i = 0; i < k; ++i) Nk = N * Nk;
  Subspace<F> Up = Subspace<F>::preimage(Nk, L, tol).intersect(U, tol);
  Subspace<F> Lp = L.sum(apply_power(N, U, k, tol), tol);
  fill_weight(N, Up, Lp, c, k - 1, W, tol);
}

}  // namespace detail

template <class F>
WeightFiltration<F> weight_filtration(const Matrix<F>& N, int center, const Tol& tol = {}) {
  const std::size_t n = N.rows();
  if (N.cols() != n) throw InputError("weight filtration needs a square matrix");
  Matrix<F> P = Matrix<F>::identity(n);
  int K = 0;
  for (; K <= static_cast<int>(n); ++K) {
    if (P.is_zero(tol)) break;
    P = N * P;
  }
  if (K > static_cast<int>(n)) throw InputError("weight filtration: matrix is not nilpotent");
  // N^K = 0, so the nilpotency order is K-1 (K=0 only for n=0).
  int kmax = std::max(0, K - 1);
  WeightFiltration<F> W;
  W.n = n;
  W.lo = center - kmax - 1;
  W.hi = center + kmax;
  W.levels.assign(W.hi - W.lo + 1, Subspace<F>(n));
  W.whole = Subspace<F>::full(n);
  detail::fill_weight(N, W.whole, Subspace<F>(n), center, kmax, W, tol);
  return W;
}

// Weight filtration of N restricted to an N-stable subspace H (returned in ambient coordinates).
template <class F>
WeightFiltration<F> weight_filtration_on(const Matrix<F>& N, const Subspace<F>& H, int center, const Tol& tol = {}) {
  const std::size_t n = N.rows();
  WeightFiltration<F> W;
  W.n = n;
  int kmax = 0;
  Subspace<F> S = H;
  while (S.dim() > 0) {
    S = S.image(N, tol);
    if (S.dim() > 0) ++kmax;
    if (kmax > static_cast<int>(n)) throw InputError("weight filtration: matrix is not nilpotent");
  }
  W.lo = center - kmax - 1;
  W.hi = center + kmax;
  W.levels.assign(W.hi - W.lo + 1, Subspace<F>(n));
  W.whole = H;
  detail::fill_weight(N, H, Subspace<F>(n), center, kmax, W, tol);
  return W;
}

}  // namespace terp
