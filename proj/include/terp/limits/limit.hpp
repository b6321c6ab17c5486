#pragma once
#include <string>
#include <vector>

#include "terp/classifying/spectrum.hpp"
#include "terp/classifying/symplectic.hpp"
#include "terp/limits/family.hpp"

namespace terp {

template <class K>
struct GrassLimit {
  SlotIndex W;       // W^omega
  Subspace<K> G;     // limit point
  int steps = 0;     // saturation steps taken
};

namespace limit_detail {

template <class K>
using LRow = std::vector<LPoly<K>>;

template <class K>
bool row_is_zero(const LRow<K>& r) {
  for (auto& x : r)
    if (!x.is_zero()) return false;
  return true;
}
template <class K>
long row_valuation(const LRow<K>& r) {
  long v = std::numeric_limits<long>::max();
  for (auto& x : r)
    if (!x.is_zero()) v = std::min(v, x.valuation());
  return v;
}
template <class K>
long row_degree(const LRow<K>& r) {
  long d = std::numeric_limits<long>::min();
  for (auto& x : r)
    if (!x.is_zero()) d = std::max(d, x.degree());
  return d;
}

}  // namespace limit_detail

// Flat limit at s = 0 of the image of the family in W^omega (valuation echelon):
// normalise every row to valuation 0; while the values at s = 0 are dependent,
// replace the involved row of largest s-degree (ties: last row) by the vanishing
// combination and divide by s. The largest degree drops each time, so this stops.
template <class K>
GrassLimit<K> grassmann_limit(const ParamFamily<K>& f) {
  using namespace limit_detail;
  const auto& top = *f.top;
  GrassLimit<K> out;
  out.W = window_omega(top, f.win);
  const std::size_t n = out.W.size(), m = n / 2;
  std::vector<LRow<K>> rows;
  for (std::size_t gi = 0; gi < f.gens.size(); ++gi)
    for (long k = 0; k <= f.win.n + 1; ++k) {
      LRow<K> row(n);
      for (auto& [sl, c] : f.gens[gi]) {
        Slot s{sl.order + k, sl.index};
        if (s.order < f.win.alpha1)
          throw InputError("family generator " + std::to_string(gi + 1) + " has a term below alpha_1");
        if (auto p = out.W.find(s)) row[*p] += c;
      }
      if (!row_is_zero(row)) rows.push_back(std::move(row));
    }
  for (;;) {
    std::vector<LRow<K>> live;
    for (auto& r : rows) {
      if (row_is_zero(r)) continue;
      long v = row_valuation(r);
      for (auto& x : r) x = x.shifted(-v);
      live.push_back(std::move(r));
    }
    rows = std::move(live);
    Matrix<K> lead(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) lead(i, j) = rows[i][j].coeff(0);
    Matrix<K> dep = nullspace(lead.transpose());
    if (dep.rows() == 0) {
      out.G = Subspace<K>::span(lead);
      break;
    }
    std::size_t pick = rows.size();
    long best = std::numeric_limits<long>::min();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (field_traits<K>::is_zero(dep(0, i))) continue;
      long d = row_degree(rows[i]);
      if (d >= best) { best = d; pick = i; }
    }
    LRow<K> comb(n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (field_traits<K>::is_zero(dep(0, i))) continue;
      LPoly<K> c(dep(0, i));
      for (std::size_t j = 0; j < n; ++j) comb[j] += c * rows[i][j];
    }
    rows[pick] = std::move(comb);
    ++out.steps;
  }
  if (out.G.dim() != m)
    throw MathError("LimitNotInWindow", "saturation gives dimension " + std::to_string(out.G.dim()) + ", expected " +
                                            std::to_string(m));
  return out;
}

// Evaluate a point over Q(i)(w) at w = w0.
inline Subspace<GaussQ> specialize_point(const Subspace<RatFun>& G, const GaussQ& w0) {
  const auto& B = G.basis();
  Matrix<GaussQ> m(B.rows(), B.cols());
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) m(i, j) = B(i, j).eval(w0);
  return Subspace<GaussQ>::span(m);
}

struct LimitReport {
  std::string extension;
  bool degenerate = false;
  std::string diagnosis;             // failed conditions
  std::string witness;               // pairing rank mod z
  Lattice<GaussQ> lattice;           // canonical generators (or specialised generators if degenerate)
  Subspace<GaussQ> point;            // point in W^omega
  ValidationReport checks;
  std::string membership = "none";   // of the point: Lambda, Lambda_b or Lambda_ab
  std::vector<Rational> spectrum;
  int steps = 0;
};

// Limit TERP-structure of a one-parameter family. "saturate" takes the flat limit
// in W^omega; "generated" specialises the listed generators at the limit point.
inline LimitReport limit_terp(const ParamFamily<GaussQ>& f, const Tol& tol = {}) {
  LimitReport R;
  R.extension = f.extension;
  Lattice<GaussQ> L0;
  if (f.extension == "generated") {
    L0 = family_member(f, GaussQ(0));
  } else {
    auto g = grassmann_limit(f);
    R.steps = g.steps;
    L0 = lattice_of_point(f.top, f.win, g.G, tol);
  }
  {
    auto S = build_w_omega<GaussQ>(f.top, f.win);
    auto G = point_of_lattice(L0, tol);
    if (G.dim() == S.m) R.membership = to_string(membership_lambda_ab(S, G, tol));
  }
  auto rep = validate_lattice(L0, tol);
  for (auto& c : rep.checks) R.checks.checks.push_back(c);
  if (const Check* c = rep.find("pairing_nondegenerate_mod_z")) R.witness = c->detail;
  if (!rep.ok()) {
    R.degenerate = true;
    R.diagnosis = failed_checks(rep);
    R.lattice = L0;
    return R;
  }
  R.point = point_of_lattice(L0, tol);
  R.lattice = lattice_of_point(f.top, f.win, R.point, tol);
  R.spectrum = spectral_numbers(R.lattice, tol);
  bool inside = true;
  for (auto& a : R.spectrum) inside = inside && a >= f.win.alpha1 && a <= f.win.alpha_mu;
  R.checks.add("spectrum_in_window", inside);
  return R;
}

// grassmann_limit(f) == grassmann_limit(f with r -> r u(r)); u is a polynomial in
// the family parameter and must keep r u(r) tending to the same limit point.
inline bool limit_reparam_invariance(const Model& m, const FamilySpec& fs, const MPoly& u) {
  const std::size_t p = family_detail::param_index(m, fs.parameter);
  for (auto& [e, c] : u.terms())
    for (std::size_t k = 0; k < e.size(); ++k)
      if (k != p && e[k] != 0) throw InputError("unit may only involve the family parameter");
  if (u.is_zero()) throw MathError("UnitVanishes", "u = 0");
  auto [lo, hi] = u.degree_range(p);
  if (!fs.to_infinity && (lo < 0 || u.coefficient(p, 0).is_zero()))
    throw MathError("UnitVanishes", "u is not a unit at r = 0");
  if (fs.to_infinity && hi < 0) throw MathError("UnitVanishes", "r u(r) does not tend to infinity");
  auto a = grassmann_limit(make_family<GaussQ>(m, fs));
  auto b = grassmann_limit(make_family<GaussQ>(m, fs, u));
  return a.G.equals(b.G);
}

}  // namespace terp
