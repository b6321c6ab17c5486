#pragma once
#include <string>

#include "terp/classifying/spectrum.hpp"
#include "terp/core/signature.hpp"

namespace terp {

struct PmhsReport : ValidationReport {
  // The check runs on F itself; the twist by the automorphism G is not available.
  std::string caveat = "untwisted Hodge filtration";
};

namespace detail {

template <class F>
Matrix<F> lift_matrix(const Matrix<GaussQ>& m) {
  Matrix<F> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = field_cast<F>(m(i, j));
  return out;
}

// conj(v) = K * coordinatewise conjugate of v.
template <class F>
Vec<F> real_conj(const Matrix<F>& K, const Vec<F>& v) {
  Vec<F> c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = fconj(v[i]);
  return K.apply(c);
}

template <class F>
Subspace<F> real_conj(const Matrix<F>& K, const Subspace<F>& S, const Tol& tol) {
  Matrix<F> m(0, S.ambient());
  for (std::size_t k = 0; k < S.dim(); ++k) m.append_row(real_conj(K, S.vector(k)));
  return Subspace<F>::span(m, tol);
}

template <class F>
F bilinear(const Matrix<F>& S, const Vec<F>& x, const Vec<F>& y) {
  F acc(0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) acc += x[i] * S(i, j) * y[j];
  return acc;
}

inline GaussQ ipow_i(long e) {
  e = ((e % 4) + 4) % 4;
  static const GaussQ v[4] = {GaussQ(1), GaussQ::i(), GaussQ(-1), -GaussQ::i()};
  return v[e];
}

}  // namespace detail

// Polarized mixed Hodge structure test for (H^infty, F, S, -N) on the
// eigenvalue-1 block (weight w) and the remaining block (weight w-1).
template <class F>
PmhsReport pmhs_check(const TopologicalData& top, const HodgeFiltration<F>& Hf, const Tol& tol = {}) {
  PmhsReport rep;
  const std::size_t mu = top.mu;
  if (!top.has_S || !top.has_monodromy_log) throw InputError("PMHS check needs S and monodromy_log in the model");
  if (Hf.mu != mu) throw InputError("ShapeMismatch: Hodge filtration and topological data differ in rank");
  Matrix<F> S = detail::lift_matrix<F>(top.S);
  Matrix<F> K = detail::lift_matrix<F>(top.conjugation);
  Matrix<F> N = detail::lift_matrix<F>(top.monodromy_log).scaled(F(-1));

  for (int one = 1; one >= 0; --one) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < mu; ++j)
      if (top.eigenvalue_one(j) == bool(one)) idx.push_back(j);
    if (idx.empty()) continue;
    const int k0 = one ? top.w : top.w - 1;
    const std::string tag = one ? "[eigenvalue 1]" : "[eigenvalue != 1]";
    auto H = Subspace<F>::coordinate(mu, idx);
    std::vector<HodgeBlock<F>> blocks;
    int pmin = 0, pmax = -1;
    bool first = true;
    for (auto& b : Hf.blocks)
      if (is_integer(b.alpha) == bool(one)) {
        blocks.push_back(b);
        pmin = first ? b.pmin : std::min(pmin, b.pmin);
        pmax = first ? b.pmax : std::max(pmax, b.pmax);
        first = false;
      }
    auto Fp = [&](int p) {
      Subspace<F> s(mu);
      for (auto& b : blocks) s = s.sum(Hf.block_at(b, p), tol);
      return s;
    };

    // S symmetry (-1)^{k0}
    bool sym = true;
    for (auto i : idx)
      for (auto j : idx) {
        GaussQ a = top.S(i, j), b = top.S(j, i);
        if (a != ((k0 % 2 == 0) ? b : -b)) sym = false;
      }
    rep.add("S_symmetry" + tag, sym, sym ? "" : "S is not (-1)^" + std::to_string(k0) + "-symmetric");

    bool stable = H.contains(H.image(N, tol), tol);
    rep.add("N_preserves_block" + tag, stable);
    if (!stable) continue;
    auto W = weight_filtration_on(N, H, k0, tol);
    // p-range wide enough that every condition is trivially true outside it
    const int plo = std::min({pmin, W.lo - pmax, k0 - pmax}) - 1;
    const int phi = std::max(pmax, W.hi - pmin) + 1;

    bool transversal = true, strict = true, isotropic = true;
    std::string wt, ws, wi;
    Subspace<F> NH = H.image(N, tol);
    for (int p = plo; p <= phi; ++p) {
      Subspace<F> NF = Fp(p).image(N, tol);
      if (!Fp(p - 1).contains(NF, tol) && transversal) {
        transversal = false;
        wt = "N(F^" + std::to_string(p) + ") is not contained in F^" + std::to_string(p - 1);
      }
      Subspace<F> target = NH.intersect(Fp(p - 1), tol);
      if (!NF.equals(target, tol) && strict) {
        strict = false;
        ws = "dim N(F^" + std::to_string(p) + ") = " + std::to_string(NF.dim()) + " but dim N(H) ∩ F^" +
             std::to_string(p - 1) + " = " + std::to_string(target.dim());
      }
      Subspace<F> A = Fp(p), B = Fp(k0 - p + 1);
      if (A.dim() && B.dim() && !bilinear_gram(A.basis(), S, B.basis()).is_zero(tol) && isotropic) {
        isotropic = false;
        wi = "S(F^" + std::to_string(p) + ", F^" + std::to_string(k0 - p + 1) + ") != 0";
      }
    }
    rep.add("transversality" + tag, transversal, wt);
    rep.add("strictness" + tag, strict, ws);
    rep.add("isotropy" + tag, isotropic, wi);

    // Gr^W_k carries a Hodge structure of weight k.
    bool opposed = true;
    std::string wo;
    for (int k = W.lo; k <= W.hi && opposed; ++k) {
      Subspace<F> Wk = W.at(k), Wk1 = W.at(k - 1);
      if (Wk.dim() == Wk1.dim()) continue;
      for (int p = plo; p <= phi; ++p) {
        Subspace<F> A = Fp(p).intersect(Wk, tol).sum(Wk1, tol);
        Subspace<F> B = detail::real_conj(K, Fp(k - p + 1), tol).intersect(Wk, tol).sum(Wk1, tol);
        if (A.sum(B, tol).dim() != Wk.dim() || A.intersect(B, tol).dim() != Wk1.dim()) {
          opposed = false;
          wo = "Gr^W_" + std::to_string(k) + ": F^" + std::to_string(p) + " and conj F^" +
               std::to_string(k - p + 1) + " are not opposite";
          break;
        }
      }
    }
    rep.add("opposedness" + tag, opposed, wo);

    // i^{p-q} S(v, N^l conj v) > 0 on primitive (p,q)-classes of Gr^W_{k0+l}.
    bool positive = true;
    std::string wp;
    for (int l = 0; k0 + l <= W.hi && positive; ++l) {
      int k = k0 + l;
      Subspace<F> Wk = W.at(k), Wk1 = W.at(k - 1);
      if (Wk.dim() == Wk1.dim()) continue;
      Matrix<F> Nl = Matrix<F>::identity(mu), Nl1;
      for (int t = 0; t < l; ++t) Nl = N * Nl;
      Nl1 = N * Nl;
      Subspace<F> prim = Wk.intersect(Subspace<F>::preimage(Nl1, W.at(k0 - l - 3), tol), tol);
      for (int p = plo; p <= phi && positive; ++p) {
        int q = k - p;
        Subspace<F> A = Fp(p).intersect(Wk, tol).sum(Wk1, tol);
        Subspace<F> B = detail::real_conj(K, Fp(q), tol).intersect(Wk, tol).sum(Wk1, tol);
        Subspace<F> Hpq = A.intersect(B, tol).intersect(prim, tol);
        auto reps = complement_basis(Hpq, Wk1, tol);
        if (reps.empty()) continue;
        F phase = field_cast<F>(detail::ipow_i(p - q));
        Matrix<F> Q(reps.size(), reps.size());
        for (std::size_t a = 0; a < reps.size(); ++a)
          for (std::size_t b = 0; b < reps.size(); ++b)
            Q(a, b) = phase * detail::bilinear(S, reps[a], Nl.apply(detail::real_conj(K, reps[b])));
        bool ok = is_hermitian(Q, tol);
        if (ok) {
          Signature sg = hermitian_signature(Q, tol);
          ok = sg.pos == int(reps.size());
        }
        if (!ok) {
          positive = false;
          wp = "primitive (" + std::to_string(p) + "," + std::to_string(q) + ") part of Gr^W_" + std::to_string(k) +
               " is not positive";
        }
      }
    }
    rep.add("positivity" + tag, positive, wp);
  }
  return rep;
}

}  // namespace terp
