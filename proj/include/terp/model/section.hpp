#pragma once
#include <map>
#include <string>

#include "terp/core/mpoly.hpp"
#include "terp/model/topological_data.hpp"

namespace terp {

// es(A_index, order); orders are congruent to exponents[index] mod Z.
struct Slot {
  Rational order;
  int index = 0;
  friend bool operator<(const Slot& a, const Slot& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.index < b.index;
  }
  friend bool operator==(const Slot& a, const Slot& b) { return a.order == b.order && a.index == b.index; }
};

// Finite sum of elementary sections with coefficients in a commutative ring R
// (Q(i), complex doubles, or Laurent polynomials in parameters). No stored zeros.
template <class R>
class Section {
 public:
  Section() = default;
  static Section elementary(int index, const Rational& order, R c = R(1)) {
    Section s;
    s.add(Slot{order, index}, c);
    return s;
  }

  const std::map<Slot, R>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add(const Slot& sl, const R& c) {
    if (ring_is_zero(c)) return;
    auto it = t_.find(sl);
    if (it == t_.end()) { t_.emplace(sl, c); return; }
    it->second += c;
    if (ring_is_zero(it->second)) t_.erase(it);
  }
  Section& operator+=(const Section& o) {
    for (auto& [sl, c] : o.t_) add(sl, c);
    return *this;
  }
  Section& operator-=(const Section& o) {
    for (auto& [sl, c] : o.t_) add(sl, -c);
    return *this;
  }
  friend Section operator+(Section a, const Section& b) { return a += b; }
  friend Section operator-(Section a, const Section& b) { return a -= b; }
  friend Section operator*(const R& c, const Section& s) {
    Section out;
    if (ring_is_zero(c)) return out;
    for (auto& [sl, x] : s.t_) out.add(sl, c * x);
    return out;
  }
  friend bool operator==(const Section& a, const Section& b) { return a.t_ == b.t_; }

  // Lowest order present (the V-order); undefined for zero.
  Rational min_order() const { return t_.begin()->first.order; }
  Rational max_order() const { return t_.rbegin()->first.order; }
  // Part of exact order o.
  Section component(const Rational& o) const {
    Section out;
    for (auto& [sl, c] : t_)
      if (sl.order == o) out.t_.emplace(sl, c);
    return out;
  }

  template <class G>
  Section<G> map_coeffs(G (*f)(const R&)) const {
    Section<G> out;
    for (auto& [sl, c] : t_) out.add(sl, f(c));
    return out;
  }
  template <class Fn>
  auto transform(Fn f) const {
    using G = decltype(f(std::declval<const R&>()));
    Section<G> out;
    for (auto& [sl, c] : t_) out.add(sl, f(c));
    return out;
  }

 private:
  std::map<Slot, R> t_;
};

// Laurent polynomial in z with rational exponents.
template <class R>
using ZSeries = std::map<Rational, R>;

template <class R>
Section<R> mul_z(const Section<R>& s, long k = 1) {
  Section<R> out;
  for (auto& [sl, c] : s.terms()) out.add(Slot{sl.order + k, sl.index}, c);
  return out;
}

template <class R>
R ring_from(const GaussQ& x) {
  if constexpr (std::is_same_v<R, Approx>) return x.to_complex();
  else return R(x);
}

// z^2 d/dz es(A, o) = o es(A, o+1) + es(Ñ A, o+1).
template <class R>
Section<R> z2nabla(const Section<R>& s, const TopologicalData& top) {
  Section<R> out;
  for (auto& [sl, c] : s.terms()) {
    Rational o1 = sl.order + 1;
    if (sgn(sl.order) != 0) out.add(Slot{o1, sl.index}, ring_from<R>(GaussQ(sl.order)) * c);
    for (int k = 0; k < top.mu; ++k) {
      const GaussQ& n = top.nilpotent(k, sl.index);
      if (!n.is_zero()) out.add(Slot{o1, k}, ring_from<R>(n) * c);
    }
  }
  return out;
}

// tau(c es(A_j, o)) = conj(c) es(conj(A_j), w - o).
template <class F>
Section<F> apply_tau(const Section<F>& s, const TopologicalData& top) {
  Section<F> out;
  for (auto& [sl, c] : s.terms()) {
    Rational o = Rational(top.w) - sl.order;
    F cc = fconj(c);
    for (int k = 0; k < top.mu; ++k) {
      const GaussQ& x = top.conjugation(k, sl.index);
      if (!x.is_zero()) out.add(Slot{o, k}, field_cast<F>(x) * cc);
    }
  }
  return out;
}

// P(a, b) with P(z^k a, z^l b) = (-1)^l z^{k+l} P(a, b).
template <class R>
ZSeries<R> pair_P(const Section<R>& a, const Section<R>& b, const TopologicalData& top) {
  ZSeries<R> out;
  for (auto& [sa, ca] : a.terms())
    for (auto& [sb, cb] : b.terms()) {
      const GaussQ& C = top.pairing(sa.index, sb.index);
      if (C.is_zero()) continue;
      Rational l = sb.order - top.exponents[sb.index];
      long sign = (floor_long(l) % 2 == 0) ? 1 : -1;
      Rational e = sa.order + sb.order;
      R v = ring_from<R>(sign > 0 ? C : -C) * ca * cb;
      auto it = out.find(e);
      if (it == out.end()) out.emplace(e, v);
      else it->second += v;
    }
  for (auto it = out.begin(); it != out.end();)
    it = ring_is_zero(it->second) ? out.erase(it) : std::next(it);
  return out;
}

template <class R>
R zcoeff(const ZSeries<R>& p, const Rational& e) {
  auto it = p.find(e);
  return it == p.end() ? R(0) : it->second;
}

}  // namespace terp
