#pragma once
#include <string>

#include "terp/classifying/graded.hpp"

namespace terp {

// W^omega = V^{alpha_1} / V^{>alpha_mu - 1} with omega = [P^{(w-1)}],
// a = [z^2 nabla], b = [z]. Matrices act on column coordinate vectors.
template <class F>
struct SymplecticModel {
  TopPtr top;
  SpectralWindow win;
  SlotIndex W;
  Matrix<F> omega, a, b;
  std::size_t m = 0;
  std::size_t dim() const { return W.size(); }
};

template <class F>
SymplecticModel<F> build_w_omega(TopPtr top, const SpectralWindow& win) {
  SymplecticModel<F> S;
  S.top = top;
  S.win = win;
  S.W = window_omega(*top, win);
  const std::size_t d = S.W.size();
  if (d % 2 != 0) throw MathError("OddDimension", "W^omega has odd dimension " + std::to_string(d));
  S.m = d / 2;
  S.omega = pairing_gram<F>(*top, S.W, S.W, top->w - 1);
  S.a = Matrix<F>(d, d);
  S.b = Matrix<F>(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    auto e = Section<F>::elementary(S.W.slots[j].index, S.W.slots[j].order);
    Vec<F> za = to_coords(z2nabla(e, *top), S.W);
    Vec<F> zb = to_coords(mul_z(e), S.W);
    for (std::size_t i = 0; i < d; ++i) {
      S.a(i, j) = za[i];
      S.b(i, j) = zb[i];
    }
  }
  if (rank(S.omega) != d) throw MathError("DegenerateOmega", "omega is degenerate on W^omega");
  return S;
}

enum class Membership { None, Lambda, LambdaB, LambdaAB };

inline std::string to_string(Membership m) {
  switch (m) {
    case Membership::LambdaAB: return "Lambda_ab";
    case Membership::LambdaB: return "Lambda_b";
    case Membership::Lambda: return "Lambda";
    default: return "none";
  }
}

// Finest of: omega-isotropic (Lambda), + b-invariant (Lambda_b), + a-invariant (Lambda_ab).
template <class F>
Membership membership_lambda_ab(const SymplecticModel<F>& S, const Subspace<F>& G, const Tol& tol = {}) {
  if (G.ambient() != S.dim() || G.dim() != S.m)
    throw InputError("membership test needs an m-dimensional subspace of W^omega");
  if (!bilinear_gram(G.basis(), S.omega, G.basis()).is_zero(tol)) return Membership::None;
  if (!G.contains(G.image(S.b, tol), tol)) return Membership::Lambda;
  if (!G.contains(G.image(S.a, tol), tol)) return Membership::LambdaB;
  return Membership::LambdaAB;
}

template <class F>
struct GrassPoint {
  SymplecticModel<F> model;
  Subspace<F> sub;
};

}  // namespace terp
