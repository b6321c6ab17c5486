#pragma once
#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "terp/classifying/graded.hpp"
#include "terp/core/weight_filtration.hpp"

namespace terp {

using SpectralPair = std::pair<Rational, int>;

// Spectral numbers (sorted, with multiplicity) and spectral pairs (sorted).
struct SpectralData {
  std::vector<Rational> numbers;
  std::vector<SpectralPair> pairs;
};

template <class F>
std::vector<Rational> spectral_numbers(const LatticeModel<F>& M) {
  std::vector<Rational> out;
  for (auto& beta : M.orders()) {
    long d = long(M.gr(beta).dim()) - long(M.gr_z(beta).dim());
    for (long k = 0; k < d; ++k) out.push_back(beta);
  }
  return out;
}

template <class F>
std::vector<Rational> spectral_numbers(const Lattice<F>& L, const Tol& tol = {}) {
  return spectral_numbers(analyze(L, tol));
}

// Weight filtration of Ñ on the class of beta, centred at 0.
template <class F>
WeightFiltration<F> class_weight_filtration(const LatticeModel<F>& M, const Rational& beta) {
  Matrix<F> N(M.mu(), M.mu());
  for (int i = 0; i < M.mu(); ++i)
    for (int j = 0; j < M.mu(); ++j) N(i, j) = field_cast<F>(M.top->nilpotent(i, j));
  auto H = Subspace<F>::coordinate(M.mu(), M.class_of(beta));
  return weight_filtration_on(N, H, 0, M.tol);
}

// d(beta, l) = dim (X ∩ W_k) / (Y ∩ W_k + X ∩ W_{k-1}), k = l - (w-1),
// X = Gr^beta L, Y = Gr^beta zL.
template <class F>
std::vector<SpectralPair> spectral_pairs(const LatticeModel<F>& M) {
  std::vector<SpectralPair> out;
  const int shift = M.top->w - 1;
  for (auto& beta : M.orders()) {
    auto X = M.gr(beta), Y = M.gr_z(beta);
    if (X.dim() == Y.dim()) continue;
    auto W = class_weight_filtration(M, beta);
    for (int k = W.lo; k <= W.hi; ++k) {
      auto XW = X.intersect(W.at(k), M.tol);
      auto low = Y.intersect(W.at(k), M.tol).sum(X.intersect(W.at(k - 1), M.tol), M.tol);
      long d = long(XW.dim()) - long(low.dim());
      for (long c = 0; c < d; ++c) out.emplace_back(beta, k + shift);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class F>
SpectralData spectral_data(const LatticeModel<F>& M) {
  return SpectralData{spectral_numbers(M), spectral_pairs(M)};
}

// ---------------------------------------------------------------------------
// Hodge filtration on H^infty: F^p H_lambda = Gr^{alpha + w - 1 - p}_V L for the
// representative alpha in (0,1] of lambda = exp(-2 pi i alpha).

template <class F>
struct HodgeBlock {
  Rational alpha;                       // representative in (0,1]
  std::vector<std::size_t> indices;     // basis vectors A_j in this eigenspace
  int pmin = 0, pmax = -1;              // F^p = H_lambda for p <= pmin, 0 for p > pmax
  std::map<int, Subspace<F>> F_;        // F^p for pmin <= p <= pmax
};

template <class F>
struct HodgeFiltration {
  std::size_t mu = 0;
  std::vector<HodgeBlock<F>> blocks;

  // F^p of one block.
  Subspace<F> block_at(const HodgeBlock<F>& b, int p) const {
    if (p > b.pmax) return Subspace<F>(mu);
    if (p <= b.pmin) return Subspace<F>::coordinate(mu, b.indices);
    return b.F_.at(p);
  }
  // F^p of the whole H^infty.
  Subspace<F> at(int p, const Tol& tol = {}) const {
    Subspace<F> s(mu);
    for (auto& b : blocks) s = s.sum(block_at(b, p), tol);
    return s;
  }
  int pmin() const {
    int v = 0;
    bool first = true;
    for (auto& b : blocks) { v = first ? b.pmin : std::min(v, b.pmin); first = false; }
    return v;
  }
  int pmax() const {
    int v = -1;
    bool first = true;
    for (auto& b : blocks) { v = first ? b.pmax : std::max(v, b.pmax); first = false; }
    return v;
  }
};

inline Rational class_representative(const Rational& e) {
  Rational a = frac(e);
  return sgn(a) == 0 ? Rational(1) : a;
}

template <class F>
HodgeFiltration<F> hodge_filtration(const LatticeModel<F>& M) {
  HodgeFiltration<F> H;
  H.mu = M.mu();
  std::set<Rational> seen;
  for (int j = 0; j < M.mu(); ++j) {
    Rational a = class_representative(M.top->exponents[j]);
    if (!seen.insert(a).second) continue;
    HodgeBlock<F> b;
    b.alpha = a;
    b.indices = M.class_of(a);
    const Rational base = a + M.top->w - 1;  // beta = base - p
    // beta < alpha_1  <=> p > base - alpha_1 ; beta > alpha_mu - 1 <=> p < base - alpha_mu + 1
    b.pmax = floor_long(base - M.win.alpha1);
    b.pmin = -floor_long(M.win.alpha_mu - 1 - base) - 1;  // largest p with beta > alpha_mu - 1
    for (int p = b.pmin + 1; p <= b.pmax; ++p) b.F_.emplace(p, M.gr(base - p));
    H.blocks.push_back(std::move(b));
  }
  std::sort(H.blocks.begin(), H.blocks.end(), [](auto& x, auto& y) { return x.alpha < y.alpha; });
  return H;
}

// ---------------------------------------------------------------------------
// Candidate spectra: per eigenvalue class the right number of values in
// [alpha_1, alpha_mu], and symmetric under alpha -> w - alpha.

namespace detail {

inline void multisets(const std::vector<Rational>& cand, std::size_t k, std::size_t from, std::vector<Rational>& cur,
                      std::vector<std::vector<Rational>>& out) {
  if (cur.size() == k) { out.push_back(cur); return; }
  for (std::size_t i = from; i < cand.size(); ++i) {
    cur.push_back(cand[i]);
    multisets(cand, k, i, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

inline std::vector<std::vector<Rational>> enumerate_admissible_spectra(const TopologicalData& top,
                                                                       const SpectralWindow& win) {
  // classes by fractional part
  std::map<Rational, std::size_t> count;
  for (auto& e : top.exponents) count[frac(e)]++;
  std::vector<std::vector<std::vector<Rational>>> choices;  // per class group
  std::set<Rational> done;
  for (auto& [c, d] : count) {
    if (done.count(c)) continue;
    Rational opp = frac(Rational(-c));
    done.insert(c);
    done.insert(opp);
    std::vector<Rational> cand;
    for (long k = -floor_long(c - win.alpha1); c + k <= win.alpha_mu; ++k) cand.push_back(c + k);
    std::vector<std::vector<Rational>> ms;
    std::vector<Rational> cur;
    detail::multisets(cand, d, 0, cur, ms);
    std::vector<std::vector<Rational>> opts;
    for (auto& s : ms) {
      std::vector<Rational> mirror;
      for (auto& x : s) mirror.push_back(Rational(top.w) - x);
      std::sort(mirror.begin(), mirror.end());
      if (opp == c) {
        if (mirror == s) opts.push_back(s);
      } else {
        if (count[opp] != d) continue;
        std::vector<Rational> both = s;
        both.insert(both.end(), mirror.begin(), mirror.end());
        opts.push_back(both);
      }
    }
    choices.push_back(std::move(opts));
  }
  std::vector<std::vector<Rational>> out{{}};
  for (auto& opts : choices) {
    std::vector<std::vector<Rational>> next;
    for (auto& base : out)
      for (auto& o : opts) {
        auto s = base;
        s.insert(s.end(), o.begin(), o.end());
        next.push_back(std::move(s));
      }
    out = std::move(next);
  }
  for (auto& s : out) std::sort(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace terp
