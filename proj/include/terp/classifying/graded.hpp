#pragma once
#include <vector>

#include "terp/model/lattice.hpp"

namespace terp {

// Everything the spectral computations need about one lattice, computed once.
template <class F>
struct LatticeModel {
  TopPtr top;
  SpectralWindow win;
  SlotIndex E, W;
  Subspace<F> G;   // point in W^omega
  Subspace<F> LE;  // L / V^{>alpha_mu}, coordinates of E
  Tol tol;

  int mu() const { return top->mu; }

  // Indices j whose exponent is congruent to o mod Z.
  std::vector<std::size_t> class_of(const Rational& o) const {
    std::vector<std::size_t> out;
    for (int j = 0; j < top->mu; ++j)
      if (top->order_allowed(j, o)) out.push_back(j);
    return out;
  }

  // Gr^beta_V L as a subspace of H^infty = C^mu (supported on the class of beta),
  // via the identification A <-> es(A, beta).
  Subspace<F> gr(const Rational& beta) const {
    const std::size_t n = top->mu;
    auto cls = class_of(beta);
    if (cls.empty() || beta < win.alpha1) return Subspace<F>(n);
    if (beta > win.alpha_mu - 1) return Subspace<F>::coordinate(n, cls);
    auto upper = E.where([&](const Rational& o) { return o >= beta; });
    Subspace<F> part = LE.intersect(Subspace<F>::coordinate(E.size(), upper), tol);
    Matrix<F> rows(0, n);
    for (std::size_t k = 0; k < part.dim(); ++k) {
      Vec<F> v(n, F(0));
      Vec<F> x = part.vector(k);
      for (std::size_t p = 0; p < E.size(); ++p)
        if (E.slots[p].order == beta) v[E.slots[p].index] = x[p];
      rows.append_row(v);
    }
    return Subspace<F>::span(rows, tol);
  }
  // Gr^beta_V zL = z Gr^{beta-1}_V L in the same coordinates.
  Subspace<F> gr_z(const Rational& beta) const { return gr(beta - 1); }

  // Distinct orders in [alpha_1, alpha_mu] that carry slots.
  std::vector<Rational> orders() const {
    std::vector<Rational> out;
    for (auto& s : E.slots)
      if (out.empty() || out.back() != s.order) out.push_back(s.order);
    return out;
  }
};

template <class F>
LatticeModel<F> analyze_point(TopPtr top, const SpectralWindow& win, const Subspace<F>& G, const Tol& tol = {}) {
  LatticeModel<F> m;
  m.top = top;
  m.win = win;
  m.E = window_E(*top, win);
  m.W = window_omega(*top, win);
  m.G = G;
  m.LE = lattice_window(*top, win, G, win.alpha_mu, tol);
  m.tol = tol;
  return m;
}

template <class F>
LatticeModel<F> analyze(const Lattice<F>& L, const Tol& tol = {}) {
  return analyze_point(L.top, L.win, point_of_lattice(L, tol), tol);
}

}  // namespace terp
