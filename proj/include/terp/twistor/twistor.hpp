#pragma once
#include <algorithm>
#include <string>
#include <vector>

#include "terp/classifying/graded.hpp"
#include "terp/core/signature.hpp"

namespace terp {

template <class F>
struct TwistorReport {
  std::vector<int> splitting;         // k_1 <= ... <= k_mu
  std::vector<Section<F>> h0_basis;   // global sections
  Matrix<F> h;                        // h(v_a, v_b) = z^{-w} P(v_a, tau v_b)
  Signature sig;
  bool pure = false, polarized = false;
  bool purity_agrees = true;          // splitting test vs h-rank test
  bool marginal = false;              // approx mode: a rank decision was close to eps
  std::vector<Check> invariants;

  std::string classification() const {
    if (!pure) return "non-pure";
    return "pure(" + std::to_string(sig.pos) + "," + std::to_string(sig.neg) + ")";
  }
};

// tau_d = z^d tau on the slots of X (antilinear: v -> T conj(v)).
template <class F>
Matrix<F> tau_matrix(const TopologicalData& top, const SlotIndex& X, long d) {
  const std::size_t n = X.size();
  Matrix<F> T(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const Slot& s = X.slots[c];
    Rational o = Rational(top.w) - s.order + d;
    for (int k = 0; k < top.mu; ++k) {
      const GaussQ& x = top.conjugation(k, s.index);
      if (x.is_zero()) continue;
      auto p = X.find(Slot{o, k});
      if (!p) throw MathError("Internal", "tau leaves the window");
      T(*p, c) = field_cast<F>(x);
    }
  }
  return T;
}

template <class F>
Subspace<F> apply_antilinear(const Matrix<F>& T, const Subspace<F>& S, const Tol& tol) {
  if (S.dim() == 0) return Subspace<F>(T.rows());
  return Subspace<F>::span(S.basis().conjugate() * T.transpose(), tol);
}

// Global sections of the twisted bundle: L ∩ z^d tau(L) on orders [alpha_1, alpha_mu + d].
template <class F>
std::pair<SlotIndex, Subspace<F>> twisted_sections(const TopologicalData& top, const SpectralWindow& win,
                                                   const Subspace<F>& G, long d, const Tol& tol = {}) {
  Rational hi = win.alpha_mu + d;
  SlotIndex X = SlotIndex::range(top, win.alpha1, hi);
  if (X.size() == 0) return {X, Subspace<F>(0)};
  Subspace<F> L = lattice_window(top, win, G, hi, tol);
  Subspace<F> tL = apply_antilinear(tau_matrix<F>(top, X, d), L, tol);
  return {X, L.intersect(tL, tol)};
}

template <class F>
std::vector<Section<F>> global_sections(const Lattice<F>& L, const Tol& tol = {}) {
  auto [X, S] = twisted_sections(*L.top, L.win, point_of_lattice(L, tol), 0, tol);
  std::vector<Section<F>> out;
  for (std::size_t k = 0; k < S.dim(); ++k) out.push_back(from_coords(S.vector(k), X));
  return out;
}

// Splitting type from the profile h(d) = sum max(0, k_i + d + 1):
// c(d) = h(d) - h(d-1) = #{k_i >= -d}.
template <class F>
std::vector<int> splitting_from_point(const TopologicalData& top, const SpectralWindow& win, const Subspace<F>& G,
                                      const Tol& tol = {}) {
  const long D = long(top.mu) * (win.n + 1);
  auto h = [&](long d) { return long(twisted_sections(top, win, G, d, tol).second.dim()); };
  std::vector<int> ks;
  long prev_h = h(-D - 2), prev_c = prev_h - h(-D - 3);
  if (prev_c != 0) throw MathError("Internal", "splitting profile does not start at zero");
  for (long d = -D - 1; d <= D; ++d) {
    long hd = h(d), c = hd - prev_h;
    for (long t = 0; t < c - prev_c; ++t) ks.push_back(int(-d));
    prev_h = hd;
    prev_c = c;
    if (c == top.mu) break;
  }
  if (prev_c != top.mu) throw MathError("Internal", "splitting profile did not stabilise within the twist bound");
  std::sort(ks.begin(), ks.end());
  return ks;
}

template <class F>
std::vector<int> splitting_type(const Lattice<F>& L, const Tol& tol = {}) {
  return splitting_from_point(*L.top, L.win, point_of_lattice(L, tol), tol);
}

// h(a, b) = z^{-w} P(a, tau b), which must be constant on global sections.
template <class F>
Matrix<F> hermitian_form(const TopologicalData& top, const std::vector<Section<F>>& basis, const Tol& tol = {}) {
  const std::size_t n = basis.size();
  Matrix<F> H(n, n);
  double scale = 0;
  std::vector<std::vector<ZSeries<F>>> raw(n, std::vector<ZSeries<F>>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      raw[a][b] = pair_P(basis[a], apply_tau(basis[b], top), top);
      for (auto& [e, c] : raw[a][b]) scale = std::max(scale, field_traits<F>::magnitude(c));
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (auto& [e, c] : raw[a][b]) {
        if (e == top.w) { H(a, b) = c; continue; }
        bool zero = true;
        if constexpr (is_exact_v<F>) zero = c.is_zero();
        else zero = std::abs(c) <= tol.eps * std::max(1.0, scale);
        if (!zero)
          throw MathError("NonConstant", "P(v" + std::to_string(a + 1) + ", tau v" + std::to_string(b + 1) +
                                             ") has a z^" + e.get_str() + " term");
      }
  return H;
}

template <class F>
TwistorReport<F> classify_point(const TopologicalData& top, const SpectralWindow& win, const Subspace<F>& G,
                                const Tol& tol = {}) {
  TwistorReport<F> R;
  auto [X, S] = twisted_sections(top, win, G, 0, tol);
  for (std::size_t k = 0; k < S.dim(); ++k) R.h0_basis.push_back(from_coords(S.vector(k), X));
  R.splitting = splitting_from_point(top, win, G, tol);
  R.h = hermitian_form(top, R.h0_basis, tol);
  R.sig = hermitian_signature(R.h, tol);
  const int mu = top.mu;
  bool split_trivial = std::all_of(R.splitting.begin(), R.splitting.end(), [](int k) { return k == 0; });
  bool h_nondeg = R.sig.zero == 0 && int(R.h0_basis.size()) == mu;
  R.pure = split_trivial;
  R.purity_agrees = split_trivial == h_nondeg;
  R.polarized = R.pure && R.sig.neg == 0 && R.sig.zero == 0;
  if constexpr (!is_exact_v<F>) {
    double lim = 10 * tol.eps;
    R.marginal = R.sig.min_pivot < lim || (R.sig.zero > 0 && R.sig.max_rejected > tol.eps / 10) ||
                 (S.dim() > 0 && S.min_pivot() < lim);
  }

  long sum = 0, expect_dim = 0, expect_corank = 0;
  bool symmetric = true;
  for (int i = 0; i < mu; ++i) {
    sum += R.splitting[i];
    if (R.splitting[i] != -R.splitting[mu - 1 - i]) symmetric = false;
    if (R.splitting[i] >= 0) expect_dim += R.splitting[i] + 1;
    if (R.splitting[i] > 0) expect_corank += R.splitting[i] + 1;
  }
  R.invariants.push_back({"degree_zero", sum == 0, ""});
  R.invariants.push_back({"splitting_symmetric", symmetric, ""});
  R.invariants.push_back({"h0_dimension", long(R.h0_basis.size()) == expect_dim,
                          std::to_string(R.h0_basis.size()) + " vs " + std::to_string(expect_dim)});
  R.invariants.push_back({"h_corank", R.sig.zero == expect_corank,
                          std::to_string(R.sig.zero) + " vs " + std::to_string(expect_corank)});
  R.invariants.push_back({"purity_agreement", R.purity_agrees, ""});
  return R;
}

template <class F>
TwistorReport<F> classify(const Lattice<F>& L, const Tol& tol = {}) {
  return classify_point(*L.top, L.win, point_of_lattice(L, tol), tol);
}

}  // namespace terp
