#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "terp/core/expr.hpp"
#include "terp/io/model.hpp"
#include "terp/limits/ratfun.hpp"

namespace terp {

// Laurent polynomial in one variable s with coefficients in K.
template <class K>
class LPoly {
 public:
  LPoly() = default;
  LPoly(long c) : LPoly(K(c)) {}  // NOLINT
  LPoly(const K& c) {             // NOLINT
    if (!field_traits<K>::is_zero(c)) t_[0] = c;
  }
  static LPoly monomial(const K& c, long k) {
    LPoly p;
    if (!field_traits<K>::is_zero(c)) p.t_[k] = c;
    return p;
  }

  const std::map<long, K>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  long valuation() const { return t_.begin()->first; }
  long degree() const { return t_.rbegin()->first; }
  K coeff(long k) const {
    auto it = t_.find(k);
    return it == t_.end() ? K(0) : it->second;
  }
  LPoly shifted(long k) const {
    LPoly p;
    for (auto& [e, c] : t_) p.t_[e + k] = c;
    return p;
  }

  LPoly& operator+=(const LPoly& o) {
    for (auto& [e, c] : o.t_) add(e, c);
    return *this;
  }
  LPoly& operator-=(const LPoly& o) {
    for (auto& [e, c] : o.t_) add(e, -c);
    return *this;
  }
  friend LPoly operator+(LPoly a, const LPoly& b) { return a += b; }
  friend LPoly operator-(LPoly a, const LPoly& b) { return a -= b; }
  LPoly operator-() const { return LPoly() - *this; }
  friend LPoly operator*(const LPoly& a, const LPoly& b) {
    LPoly p;
    for (auto& [ea, ca] : a.t_)
      for (auto& [eb, cb] : b.t_) p.add(ea + eb, ca * cb);
    return p;
  }
  LPoly& operator*=(const LPoly& o) { return *this = *this * o; }
  friend bool operator==(const LPoly& a, const LPoly& b) { return a.t_ == b.t_; }

 private:
  void add(long e, const K& c) {
    if (field_traits<K>::is_zero(c)) return;
    auto it = t_.find(e);
    if (it == t_.end()) { t_[e] = c; return; }
    it->second += c;
    if (field_traits<K>::is_zero(it->second)) t_.erase(it);
  }
  std::map<long, K> t_;
};

template <class K>
using LSection = std::map<Slot, LPoly<K>>;

// One-parameter family in the local coordinate s at the limit point:
// s = r for r -> 0 and s = 1/r for r -> infinity.
template <class K>
struct ParamFamily {
  TopPtr top;
  SpectralWindow win;
  std::string param;
  bool to_infinity = false;
  std::string extension = "saturate";
  std::vector<LSection<K>> gens;
};

inline MPoly mpoly_derivative(const MPoly& p, std::size_t idx) {
  MPoly out;
  for (auto& [e, c] : p.terms()) {
    int d = idx < e.size() ? e[idx] : 0;
    if (d == 0) continue;
    MPoly::Exps ne = e;
    ne[idx] -= 1;
    out += MPoly::monomial(c * GaussQ(d), ne);
  }
  return out;
}

namespace family_detail {

inline std::size_t param_index(const Model& m, const std::string& name) {
  auto it = std::find(m.params.begin(), m.params.end(), name);
  if (it == m.params.end()) throw InputError("unknown parameter '" + name + "'");
  return std::size_t(it - m.params.begin());
}

template <class K>
K coefficient_in(const GaussQ& c, int sym_exp) {
  if constexpr (std::is_same_v<K, RatFun>) return RatFun(c) * RatFun::var(sym_exp);
  else {
    if (sym_exp != 0) throw InputError("symbolic parameter in an exact family");
    return c;
  }
}

}  // namespace family_detail

// Reduce the model's generators to one-parameter Laurent sections:
// substitutions first, then the optional reparameterisation r -> r u(r),
// then fixed values (family "fixed", else the model's default point) for all
// remaining parameters except `symbolic`, which is kept as the variable of K = RatFun.
template <class K>
ParamFamily<K> make_family(const Model& m, const FamilySpec& fs, const std::optional<MPoly>& reparam = std::nullopt,
                           const std::string& symbolic = "") {
  using namespace family_detail;
  const std::size_t p = param_index(m, fs.parameter);
  std::optional<std::size_t> sym;
  if (!symbolic.empty()) {
    if constexpr (!std::is_same_v<K, RatFun>) throw InputError("symbolic parameter needs rational-function coefficients");
    sym = param_index(m, symbolic);
    if (*sym == p) throw InputError("symbolic parameter must differ from the family parameter");
  }
  std::vector<std::pair<std::size_t, MPoly>> subs;
  for (auto& [q, expr] : fs.substitute) {
    std::size_t qi = param_index(m, q);
    if (qi == p) throw InputError("family " + fs.name + ": cannot substitute the family parameter");
    subs.push_back({qi, parse_expr(expr, m.params)});
  }
  std::map<std::size_t, GaussQ> frozen;
  for (std::size_t q = 0; q < m.params.size(); ++q) {
    if (q == p || (sym && q == *sym) || fs.substitute.count(m.params[q])) continue;
    auto f = fs.fixed.find(m.params[q]);
    if (f != fs.fixed.end()) frozen[q] = parse_scalar(f->second);
    else if (auto d = m.point.find(m.params[q]); d != m.point.end()) frozen[q] = d->second;
    else throw InputError("family " + fs.name + ": no value for parameter '" + m.params[q] + "'");
  }
  const auto& src = fs.generators.empty() ? m.lattice : fs.generators;
  ParamFamily<K> f;
  f.top = m.top;
  f.win = make_window(*m.top, m.alpha1);
  f.param = fs.parameter;
  f.to_infinity = fs.to_infinity;
  f.extension = fs.extension;
  for (auto& g : src) {
    LSection<K> out;
    for (auto& [sl, c0] : g.terms()) {
      MPoly c = c0;
      for (auto& [qi, e] : subs) c = c.substitute(qi, e);
      if (reparam) c = c.substitute(p, MPoly::var(p, m.params.size()) * *reparam);
      c = c.specialize(frozen);
      LPoly<K> lp;
      for (auto& [e, x] : c.terms()) {
        for (std::size_t k = 0; k < e.size(); ++k)
          if (e[k] != 0 && k != p && !(sym && k == *sym))
            throw InputError("family " + fs.name + ": parameter '" + m.params[k] + "' left unassigned");
        int rexp = p < e.size() ? e[p] : 0;
        int sexp = sym && *sym < e.size() ? e[*sym] : 0;
        lp += LPoly<K>::monomial(coefficient_in<K>(x, sexp), fs.to_infinity ? -rexp : rexp);
      }
      if (!lp.is_zero()) out[sl] = lp;
    }
    f.gens.push_back(std::move(out));
  }
  return f;
}

template <class K>
ParamFamily<K> make_family(const Model& m, const std::string& name) {
  return make_family<K>(m, m.family(name));
}

// Exact sample of the family at s = s0.
inline Lattice<GaussQ> family_member(const ParamFamily<GaussQ>& f, const GaussQ& s0) {
  std::vector<Section<GaussQ>> gens;
  for (auto& g : f.gens) {
    Section<GaussQ> s;
    for (auto& [sl, lp] : g) {
      GaussQ v(0);
      for (auto& [e, c] : lp.terms()) {
        if (e < 0 && s0.is_zero()) throw MathError("Pole", "family coefficient has a pole at the sample");
        v += c * ipow(s0, e);
      }
      s.add(sl, v);
    }
    if (!s.is_zero()) gens.push_back(s);
  }
  return Lattice<GaussQ>{f.top, f.win, gens};
}

struct VariationSample {
  std::map<std::string, GaussQ> point;
  bool passed = true;
  std::string detail;
};

// Horizontality in the direction of `param`: z d/d(param) g_i lies in the lattice at each sample.
inline std::vector<VariationSample> variation_check(const Model& m, const std::string& param,
                                                    const std::vector<std::map<std::string, GaussQ>>& samples,
                                                    const Tol& tol = {}) {
  const std::size_t p = family_detail::param_index(m, param);
  std::vector<Section<MPoly>> dgens;
  for (auto& g : m.lattice) dgens.push_back(mul_z(g.transform([&](const MPoly& c) { return mpoly_derivative(c, p); })));
  std::vector<VariationSample> out;
  for (auto& pt : samples) {
    VariationSample vs;
    vs.point = pt;
    auto vals = resolve_point(m, pt);
    auto L = instantiate<GaussQ>(m, vals);
    auto E = window_E(*m.top, L.win);
    auto LE = window_span(L, tol);
    auto d = evaluate_sections(dgens, vals);
    for (std::size_t i = 0; i < d.size(); ++i)
      if (!LE.contains(to_coords(d[i], E), tol)) {
        vs.passed = false;
        vs.detail += (vs.detail.empty() ? "" : "; ") + std::string("z d/d") + param + " g" + std::to_string(i + 1) +
                     " not in L";
      }
    out.push_back(vs);
  }
  return out;
}

}  // namespace terp
