#pragma once
#include <string>
#include <vector>

#include "terp/classifying/spectrum.hpp"

namespace terp {

// Symbolic chart around a reference lattice with fixed spectral pairs:
// v_i = s_i + sum c_ij^(p) z^-p s_j, s_j = es(b_j, beta_j).
struct AnsatzChart {
  struct Var {
    std::string name;
    int i = 0, j = 0, p = 0;  // 1-based i, j
    bool forced = false;      // set to zero on the stratum
  };
  std::vector<Vec<GaussQ>> b;    // b_j in H^infty coordinates
  std::vector<Rational> beta;
  std::vector<int> level;        // spectral-pair index l_j
  std::vector<Var> vars;
  std::vector<MPoly> constraints;  // in all variables (forced ones already 0)

  std::vector<std::string> names() const {
    std::vector<std::string> n;
    for (auto& v : vars) n.push_back(v.name);
    return n;
  }
  std::vector<std::string> free_names() const {
    std::vector<std::string> n;
    for (auto& v : vars)
      if (!v.forced) n.push_back(v.name);
    return n;
  }
  int index(const std::string& name) const {
    for (std::size_t k = 0; k < vars.size(); ++k)
      if (vars[k].name == name) return int(k);
    return -1;
  }
};

namespace ansatz_detail {

// s-coordinates: (j, q) -> coefficient of z^q s_j.
using SCoords = std::map<std::pair<int, long>, MPoly>;

inline void add(SCoords& x, int j, long q, const MPoly& c) {
  if (c.is_zero()) return;
  auto& e = x[{j, q}];
  e += c;
  if (e.is_zero()) x.erase({j, q});
}

struct Basis {
  const TopologicalData* top;
  std::vector<Vec<GaussQ>> b;
  std::vector<Rational> beta;
  // per H^infty index k: the b_j of its class and the inverse change of basis
  std::vector<std::vector<int>> cls_members;
  std::vector<Matrix<GaussQ>> cls_inv;
  std::vector<int> cls_of;

  Section<MPoly> to_section(const SCoords& x) const {
    Section<MPoly> s;
    for (auto& [jq, c] : x) {
      auto [j, q] = jq;
      for (int k = 0; k < top->mu; ++k)
        if (!b[j][k].is_zero()) s.add(Slot{beta[j] + q, k}, MPoly(b[j][k]) * c);
    }
    return s;
  }
  SCoords from_section(const Section<MPoly>& s) const {
    SCoords out;
    // group by (class, order)
    std::map<std::pair<int, Rational>, std::vector<MPoly>> groups;
    for (auto& [sl, c] : s.terms()) {
      int cl = cls_of[sl.index];
      auto& g = groups[{cl, sl.order}];
      if (g.empty()) g.assign(top->mu, MPoly());
      g[sl.index] += c;
    }
    for (auto& [key, x] : groups) {
      auto [cl, o] = key;
      const auto& mem = cls_members[cl];
      const auto& inv = cls_inv[cl];
      // coordinates restricted to the class, in increasing H^infty index
      std::vector<int> idx;
      for (int k = 0; k < top->mu; ++k)
        if (cls_of[k] == cl) idx.push_back(k);
      for (std::size_t a = 0; a < mem.size(); ++a) {
        MPoly y;
        for (std::size_t r = 0; r < idx.size(); ++r)
          if (!inv(a, r).is_zero()) y += MPoly(inv(a, r)) * x[idx[r]];
        int j = mem[a];
        Rational q = o - beta[j];
        add(out, j, floor_long(q), y);
      }
    }
    return out;
  }
};

}  // namespace ansatz_detail

inline AnsatzChart ansatz_family(const Lattice<GaussQ>& ref, const SpectralData& spp, const Tol& tol = {}) {
  using namespace ansatz_detail;
  auto M = analyze(ref, tol);
  if (spectral_pairs(M) != spp.pairs || (!spp.numbers.empty() && spectral_numbers(M) != spp.numbers))
    throw MathError("SppMismatch", "reference lattice has different spectral pairs");
  const auto& top = *ref.top;
  const int mu = top.mu;
  AnsatzChart ch;

  // b_j: complements of Gr zL + lower weight in Gr L, per order and weight level
  for (auto& beta : M.orders()) {
    auto X = M.gr(beta), Y = M.gr_z(beta);
    if (X.dim() == Y.dim()) continue;
    auto W = class_weight_filtration(M, beta);
    for (int k = W.lo; k <= W.hi; ++k) {
      auto big = X.intersect(W.at(k), tol);
      auto small = Y.intersect(W.at(k), tol).sum(X.intersect(W.at(k - 1), tol), tol);
      for (auto& v : complement_basis(big, small, tol)) {
        ch.b.push_back(v);
        ch.beta.push_back(beta);
        ch.level.push_back(k + top.w - 1);
      }
    }
  }

  Basis B;
  B.top = &top;
  B.b = ch.b;
  B.beta = ch.beta;
  B.cls_of.assign(mu, -1);
  for (int k = 0; k < mu; ++k) {
    if (B.cls_of[k] >= 0) continue;
    int cl = int(B.cls_members.size());
    std::vector<int> idx;
    for (int t = 0; t < mu; ++t)
      if (top.same_class(k, t)) { B.cls_of[t] = cl; idx.push_back(t); }
    std::vector<int> mem;
    for (int j = 0; j < mu; ++j)
      if (top.order_allowed(idx[0], ch.beta[j])) mem.push_back(j);
    Matrix<GaussQ> Bm(idx.size(), mem.size());  // columns b_j restricted to the class
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t a = 0; a < mem.size(); ++a) Bm(r, a) = ch.b[mem[a]][idx[r]];
    B.cls_members.push_back(mem);
    B.cls_inv.push_back(inverse(Bm));
  }

  // variables
  for (int i = 0; i < mu; ++i)
    for (int j = 0; j < mu; ++j)
      for (int p = 1; ch.beta[j] - p >= ref.win.alpha1; ++p) {
        AnsatzChart::Var v;
        v.i = i + 1;
        v.j = j + 1;
        v.p = p;
        v.name = "c" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" + std::to_string(p);
        Rational o = ch.beta[j] - p;
        v.forced = o < ch.beta[i] || (o == ch.beta[i] && ch.level[j] > ch.level[i]);
        ch.vars.push_back(v);
      }
  const std::size_t nv = ch.vars.size();

  std::vector<SCoords> vs(mu);
  for (int i = 0; i < mu; ++i) add(vs[i], i, 0, MPoly(1));
  for (std::size_t k = 0; k < nv; ++k) {
    auto& v = ch.vars[k];
    if (!v.forced) add(vs[v.i - 1], v.j - 1, -v.p, MPoly::var(k, nv));
  }
  std::vector<Section<MPoly>> sec;
  for (auto& x : vs) sec.push_back(B.to_section(x));

  std::vector<MPoly> raw;
  // pairing: no terms below z^w
  const long kmin = -floor_long(Rational(-2) * ref.win.alpha1);  // ceil(2 alpha_1)
  for (int i = 0; i < mu; ++i)
    for (int j = i; j < mu; ++j) {
      auto P = pair_P(sec[i], sec[j], top);
      for (long k = kmin; k <= top.w - 1; ++k) raw.push_back(zcoeff(P, Rational(k)));
    }
  // pole order: z^2 nabla v_i in C[z]-span of the v_j
  for (int i = 0; i < mu; ++i) {
    SCoords x = B.from_section(z2nabla(sec[i], top));
    for (;;) {
      auto it = std::max_element(x.begin(), x.end(),
                                 [](auto& a, auto& b) { return a.first.second < b.first.second; });
      if (it == x.end() || it->first.second < 0) break;
      auto [j, q] = it->first;
      MPoly c = it->second;
      for (auto& [kp, d] : vs[j]) add(x, kp.first, kp.second + q, -(c * d));
    }
    for (auto& [jq, c] : x) raw.push_back(c);
  }

  for (auto& c : raw) {
    if (c.is_zero()) continue;
    GaussQ lead = c.terms().rbegin()->second;
    MPoly n = MPoly(lead.inverse()) * c;
    if (std::find(ch.constraints.begin(), ch.constraints.end(), n) == ch.constraints.end())
      ch.constraints.push_back(n);
  }
  return ch;
}

}  // namespace terp
