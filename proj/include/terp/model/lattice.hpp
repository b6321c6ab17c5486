#pragma once
#include <sstream>
#include <vector>

#include "terp/model/window.hpp"

namespace terp {

// A lattice given by generators over C{z} inside the space of elementary sections.
template <class F>
struct Lattice {
  TopPtr top;
  SpectralWindow win;
  std::vector<Section<F>> gens;
};

template <class F>
Lattice<F> make_lattice(TopPtr top, const Rational& alpha1, std::vector<Section<F>> gens) {
  SpectralWindow win = make_window(*top, alpha1);
  return Lattice<F>{std::move(top), win, std::move(gens)};
}

// Window E = [alpha_1, alpha_mu] representing L / V^{>alpha_mu}.
inline SlotIndex window_E(const TopologicalData& top, const SpectralWindow& win) {
  return SlotIndex::range(top, win.alpha1, win.alpha_mu);
}
// W^omega = V^{alpha_1} / V^{>alpha_mu - 1}.
inline SlotIndex window_omega(const TopologicalData& top, const SpectralWindow& win) {
  return SlotIndex::range(top, win.alpha1, win.alpha_mu - 1);
}

// Matrix of P^{(k)} (coefficient of z^k) between the slots of a window.
template <class F>
Matrix<F> pairing_gram(const TopologicalData& top, const SlotIndex& a, const SlotIndex& b, long k) {
  Matrix<F> m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Slot& x = a.slots[i];
      const Slot& y = b.slots[j];
      if (x.order + y.order != k) continue;
      auto p = pair_P(Section<F>::elementary(x.index, x.order), Section<F>::elementary(y.index, y.order), top);
      m(i, j) = zcoeff(p, Rational(k));
    }
  return m;
}

template <class F>
Matrix<F> bilinear_gram(const Matrix<F>& rows_a, const Matrix<F>& form, const Matrix<F>& rows_b) {
  return rows_a * form * rows_b.transpose();
}

// C-span of the window truncations of z^k g, 0 <= k <= kmax.
template <class F>
Subspace<F> span_shifts(const std::vector<Section<F>>& gens, const SlotIndex& idx, long kmax, const Tol& tol,
                        bool* below = nullptr) {
  Matrix<F> m(0, idx.size());
  for (auto& g : gens)
    for (long k = 0; k <= kmax; ++k) m.append_row(to_coords(mul_z(g, k), idx, below));
  return Subspace<F>::span(m, tol);
}

template <class F>
Subspace<F> window_span(const Lattice<F>& L, const Tol& tol = {}, bool* below = nullptr) {
  return span_shifts(L.gens, window_E(*L.top, L.win), L.win.n + 1, tol, below);
}

// Image G of L in W^omega.
template <class F>
Subspace<F> point_of_lattice(const Lattice<F>& L, const Tol& tol = {}) {
  auto E = window_E(*L.top, L.win);
  auto W = window_omega(*L.top, L.win);
  return remap(window_span(L, tol), E, W, 0, tol);
}

// L ∩ (sections with orders in [alpha_1, hi]) for L = preimage of G, in the
// coordinates of SlotIndex::range(alpha_1, hi).
template <class F>
Subspace<F> lattice_window(const TopologicalData& top, const SpectralWindow& win, const Subspace<F>& G,
                           const Rational& hi, const Tol& tol = {}) {
  auto W = window_omega(top, win);
  auto X = SlotIndex::range(top, win.alpha1, hi);
  if (hi >= win.alpha_mu - 1) {
    Subspace<F> lift = remap(G, W, X, 0, tol);
    auto top_slots = X.where([&](const Rational& o) { return o > win.alpha_mu - 1; });
    return lift.sum(Subspace<F>::coordinate(X.size(), top_slots), tol);
  }
  auto low = W.where([&](const Rational& o) { return o <= hi; });
  Subspace<F> cut = G.intersect(Subspace<F>::coordinate(W.size(), low), tol);
  return remap(cut, W, X, 0, tol);
}

// Generators of L/zL read off the echelon form: rows of L_E whose pivot slot is
// not a pivot of zL_E. Ordered by (order, index) of the pivot.
template <class F>
std::vector<Section<F>> canonical_generators(const TopologicalData& top, const SpectralWindow& win,
                                             const Subspace<F>& G, const Tol& tol = {}) {
  auto E = window_E(top, win);
  auto W = window_omega(top, win);
  Subspace<F> LE = lattice_window(top, win, G, win.alpha_mu, tol);
  Subspace<F> zLE = remap(G, W, E, 1, tol);
  std::vector<bool> zp(E.size(), false);
  for (auto p : zLE.pivots()) zp[p] = true;
  std::vector<Section<F>> out;
  for (std::size_t k = 0; k < LE.dim(); ++k)
    if (!zp[LE.pivots()[k]]) out.push_back(from_coords(LE.vector(k), E));
  return out;
}

template <class F>
Lattice<F> lattice_of_point(TopPtr top, const SpectralWindow& win, const Subspace<F>& G, const Tol& tol = {}) {
  auto gens = canonical_generators(*top, win, G, tol);
  return Lattice<F>{std::move(top), win, std::move(gens)};
}

template <class F>
ValidationReport validate_lattice(const Lattice<F>& L, const Tol& tol = {}) {
  ValidationReport rep;
  const auto& top = *L.top;
  const auto& win = L.win;
  auto E = window_E(top, win);
  auto W = window_omega(top, win);
  // More than mu generators are allowed; freeness of rank mu is checked below.
  rep.add("generator_count", static_cast<int>(L.gens.size()) >= top.mu,
          std::to_string(L.gens.size()) + " generators, mu = " + std::to_string(top.mu));

  bool below = false;
  for (auto& g : L.gens)
    if (!g.is_zero() && g.min_order() < win.alpha1) below = true;
  rep.add("contained_in_V_alpha1", !below, below ? "a generator has a term of order below alpha_1" : "");

  Subspace<F> LE = window_span(L, tol);
  auto top_slots = E.where([&](const Rational& o) { return o > win.alpha_mu - 1; });
  bool contains_top = LE.contains(Subspace<F>::coordinate(E.size(), top_slots), tol);
  rep.add("contains_V_above_alpha_mu_minus_1", contains_top);

  Subspace<F> G = remap(LE, E, W, 0, tol);
  std::size_t m = W.size() / 2;
  rep.add("lagrangian_dimension", G.dim() == m,
          "dim G = " + std::to_string(G.dim()) + ", m = " + std::to_string(m));

  Matrix<F> omega = pairing_gram<F>(top, W, W, top.w - 1);
  bool iso = bilinear_gram(G.basis(), omega, G.basis()).is_zero(tol);
  rep.add("isotropic", iso);

  Subspace<F> zG = remap(G, W, W, 1, tol);
  rep.add("z_invariant", G.contains(zG, tol));

  bool ainv = true;
  for (auto& g : L.gens)
    if (!LE.contains(to_coords(z2nabla(g, top), E), tol)) ainv = false;
  rep.add("z2nabla_invariant", ainv);

  bool pole_ok = true;
  std::string pole_detail;
  for (std::size_t i = 0; i < L.gens.size(); ++i)
    for (std::size_t j = 0; j < L.gens.size(); ++j) {
      auto p = pair_P(L.gens[i], L.gens[j], top);
      if (!p.empty() && p.begin()->first < top.w) {
        bool nonzero = true;
        if constexpr (!is_exact_v<F>) nonzero = std::abs(p.begin()->second) > tol.eps;
        if (nonzero) {
          pole_ok = false;
          pole_detail = "P(g" + std::to_string(i + 1) + ",g" + std::to_string(j + 1) + ") has a z^" +
                        p.begin()->first.get_str() + " term";
        }
      }
    }
  rep.add("pairing_pole_order", pole_ok, pole_detail);

  // Nondegeneracy of z^{-w} P on L/zL, evaluated on generators read off L_E.
  Subspace<F> zLE = remap(LE.intersect(Subspace<F>::coordinate(E.size(), E.where([&](const Rational& o) {
                                         return o <= win.alpha_mu - 1;
                                       })), tol),
                          E, E, 1, tol);
  std::vector<bool> zp(E.size(), false);
  for (auto p : zLE.pivots()) zp[p] = true;
  Matrix<F> cg(0, E.size());
  for (std::size_t k = 0; k < LE.dim(); ++k)
    if (!zp[LE.pivots()[k]]) cg.append_row(LE.vector(k));
  Matrix<F> Pw = pairing_gram<F>(top, E, E, top.w);
  std::size_t r = cg.rows() ? rank(bilinear_gram(cg, Pw, cg), tol) : 0;
  rep.add("pairing_nondegenerate_mod_z", r == static_cast<std::size_t>(top.mu) && cg.rows() == static_cast<std::size_t>(top.mu),
          "pairing rank " + std::to_string(r) + " mod z on " + std::to_string(cg.rows()) + " generators");
  return rep;
}

inline std::string failed_checks(const ValidationReport& rep) {
  std::string s;
  for (auto& c : rep.checks)
    if (!c.passed) s += (s.empty() ? "" : "; ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
  return s;
}

template <class F>
Lattice<F> canonicalize_lattice(const Lattice<F>& L, const Tol& tol = {}) {
  auto rep = validate_lattice(L, tol);
  if (!rep.ok()) throw MathError("InvalidLattice", "invalid lattice: " + failed_checks(rep));
  return lattice_of_point(L.top, L.win, point_of_lattice(L, tol), tol);
}

}  // namespace terp
