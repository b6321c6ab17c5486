#pragma once
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "terp/core/field.hpp"

namespace terp {

// Multivariate Laurent polynomial with coefficients in Q(i). Variables are
// positional; names live with whoever owns the polynomial.
class MPoly {
 public:
  using Exps = std::vector<int>;

  MPoly() = default;
  MPoly(long c) : MPoly(GaussQ(c)) {}  // NOLINT
  MPoly(const GaussQ& c) {             // NOLINT
    if (!c.is_zero()) t_[Exps{}] = c;
  }
  static MPoly var(std::size_t idx, std::size_t nvars, int power = 1) {
    Exps e(nvars, 0);
    e[idx] = power;
    MPoly p;
    p.t_[trim(e)] = GaussQ(1);
    return p;
  }
  static MPoly monomial(const GaussQ& c, Exps e) {
    MPoly p;
    if (!c.is_zero()) p.t_[trim(std::move(e))] = c;
    return p;
  }

  const std::map<Exps, GaussQ>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
  GaussQ constant() const {
    auto it = t_.find(Exps{});
    return it == t_.end() ? GaussQ(0) : it->second;
  }
  bool is_monomial() const { return t_.size() == 1; }
  std::size_t nvars_used() const {
    std::size_t n = 0;
    for (auto& [e, c] : t_) n = std::max(n, e.size());
    return n;
  }

  MPoly& operator+=(const MPoly& o) {
    for (auto& [e, c] : o.t_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    for (auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  MPoly operator-() const {
    MPoly p = *this;
    for (auto& [e, c] : p.t_) c = -c;
    return p;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly p;
    for (auto& [ea, ca] : a.t_)
      for (auto& [eb, cb] : b.t_) {
        Exps e(std::max(ea.size(), eb.size()), 0);
        for (std::size_t k = 0; k < ea.size(); ++k) e[k] += ea[k];
        for (std::size_t k = 0; k < eb.size(); ++k) e[k] += eb[k];
        p.add_term(trim(std::move(e)), ca * cb);
      }
    return p;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  // Inverse of a single-term polynomial.
  MPoly monomial_inverse() const {
    if (!is_monomial()) throw InputError("only monomials can be inverted");
    auto& [e, c] = *t_.begin();
    Exps ne = e;
    for (auto& x : ne) x = -x;
    return monomial(c.inverse(), ne);
  }

  template <class F>
  F eval(const std::vector<F>& vals) const {
    F acc(0);
    for (auto& [e, c] : t_) {
      F m = field_cast<F>(c);
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (k >= vals.size()) throw InputError("polynomial evaluated with too few values");
        m *= ipow(vals[k], e[k]);
      }
      acc += m;
    }
    return acc;
  }

  // Replace variable idx by the polynomial q (negative powers need q monomial).
  MPoly substitute(std::size_t idx, const MPoly& q) const {
    MPoly out;
    for (auto& [e, c] : t_) {
      int d = idx < e.size() ? e[idx] : 0;
      Exps rest = e;
      if (idx < rest.size()) rest[idx] = 0;
      MPoly term = monomial(c, rest);
      MPoly f = d >= 0 ? q : q.monomial_inverse();
      for (int k = 0; k < std::abs(d); ++k) term *= f;
      out += term;
    }
    return out;
  }
  // Substitute several variables by constants at once.
  MPoly specialize(const std::map<std::size_t, GaussQ>& vals) const {
    MPoly out = *this;
    for (auto& [i, v] : vals) out = out.substitute(i, MPoly(v));
    return out;
  }

  // Smallest and largest exponent of one variable (0,0 for the zero polynomial).
  std::pair<int, int> degree_range(std::size_t idx) const {
    int lo = 0, hi = 0;
    bool first = true;
    for (auto& [e, c] : t_) {
      int d = idx < e.size() ? e[idx] : 0;
      if (first) { lo = hi = d; first = false; }
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    return {lo, hi};
  }
  // Coefficient of var^d (as a polynomial in the other variables).
  MPoly coefficient(std::size_t idx, int d) const {
    MPoly out;
    for (auto& [e, c] : t_) {
      int x = idx < e.size() ? e[idx] : 0;
      if (x != d) continue;
      Exps r = e;
      if (idx < r.size()) r[idx] = 0;
      out.add_term(trim(std::move(r)), c);
    }
    return out;
  }

  std::string str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest total degree first for readability; map order is deterministic
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      auto& [e, c] = *it;
      std::string mono;
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += k < names.size() ? names[k] : "x" + std::to_string(k);
        if (e[k] != 1) mono += "^" + std::to_string(e[k]);
      }
      std::string cs = c.str();
      bool neg = false;
      if (c.is_real() && sgn(c.re()) < 0) { neg = true; cs = (-c).str(); }
      else if (c.re() == 0 && sgn(c.im()) < 0) { neg = true; cs = (-c).str(); }
      bool compound = !c.is_real() && c.re() != 0;
      if (compound) cs = "(" + cs + ")";
      std::string body;
      if (mono.empty()) body = cs;
      else if (cs == "1") body = mono;
      else body = cs + "*" + mono;
      if (first) os << (neg ? "-" : "") << body;
      else os << (neg ? " - " : " + ") << body;
      first = false;
    }
    return os.str();
  }

 private:
  static Exps trim(Exps e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
    return e;
  }
  void add_term(const Exps& e, const GaussQ& c) {
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) { t_[e] = c; return; }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
  std::map<Exps, GaussQ> t_;
};

inline bool ring_is_zero(const GaussQ& x) { return x.is_zero(); }
inline bool ring_is_zero(const Approx& x) { return x == Approx(0.0); }
inline bool ring_is_zero(const MPoly& x) { return x.is_zero(); }

}  // namespace terp
