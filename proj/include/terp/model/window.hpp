#pragma once
#include <map>
#include <optional>
#include <vector>

#include "terp/core/subspace.hpp"
#include "terp/model/section.hpp"

namespace terp {

// alpha_1 <= alpha_mu = w - alpha_1; n = floor(alpha_mu - alpha_1).
struct SpectralWindow {
  Rational alpha1, alpha_mu;
  long n = 0;
};

inline SpectralWindow make_window(const TopologicalData& top, const Rational& alpha1) {
  bool ok = false;
  for (int j = 0; j < top.mu; ++j) ok = ok || top.order_allowed(j, alpha1);
  if (!ok) throw InputError("alpha_1 = " + alpha1.get_str() + " is not congruent to any exponent");
  SpectralWindow win;
  win.alpha1 = alpha1;
  win.alpha_mu = Rational(top.w) - alpha1;
  if (win.alpha_mu < win.alpha1) throw InputError("alpha_1 exceeds w/2");
  win.n = floor_long(win.alpha_mu - win.alpha1);
  return win;
}

// All slots with lo <= order <= hi, sorted by (order, index).
struct SlotIndex {
  std::vector<Slot> slots;
  std::map<Slot, std::size_t> pos;

  static SlotIndex range(const TopologicalData& top, const Rational& lo, const Rational& hi) {
    SlotIndex idx;
    if (hi < lo) return idx;
    for (int j = 0; j < top.mu; ++j) {
      const Rational& e = top.exponents[j];
      long k0 = -floor_long(e - lo);  // ceil(lo - e)
      long k1 = floor_long(hi - e);
      for (long k = k0; k <= k1; ++k) idx.slots.push_back(Slot{e + k, j});
    }
    std::sort(idx.slots.begin(), idx.slots.end());
    for (std::size_t p = 0; p < idx.slots.size(); ++p) idx.pos[idx.slots[p]] = p;
    return idx;
  }
  std::size_t size() const { return slots.size(); }
  std::optional<std::size_t> find(const Slot& s) const {
    auto it = pos.find(s);
    if (it == pos.end()) return std::nullopt;
    return it->second;
  }
  // Positions of slots satisfying a predicate on the order.
  template <class Pred>
  std::vector<std::size_t> where(Pred p) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (p(slots[k].order)) out.push_back(k);
    return out;
  }
};

// Coordinates of s in the window; terms above the window are dropped (they lie in
// the sub-lattice being quotiented), terms below set *below.
template <class F>
Vec<F> to_coords(const Section<F>& s, const SlotIndex& idx, bool* below = nullptr) {
  Vec<F> v(idx.size(), F(0));
  if (idx.size() == 0) return v;
  const Rational& lo = idx.slots.front().order;
  for (auto& [sl, c] : s.terms()) {
    if (auto p = idx.find(sl)) v[*p] = c;
    else if (sl.order < lo && below) *below = true;
  }
  return v;
}

template <class F>
Section<F> from_coords(const Vec<F>& v, const SlotIndex& idx) {
  Section<F> s;
  for (std::size_t k = 0; k < v.size(); ++k) s.add(idx.slots[k], v[k]);
  return s;
}

// Move coordinates from one window to another, multiplying by z^shift.
template <class F>
Vec<F> remap(const Vec<F>& v, const SlotIndex& from, const SlotIndex& to, long shift = 0) {
  Vec<F> out(to.size(), F(0));
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (field_traits<F>::is_zero(v[k])) continue;
    Slot s = from.slots[k];
    s.order += shift;
    if (auto p = to.find(s)) out[*p] = v[k];
  }
  return out;
}

template <class F>
Subspace<F> remap(const Subspace<F>& S, const SlotIndex& from, const SlotIndex& to, long shift, const Tol& tol) {
  Matrix<F> m(0, to.size());
  for (std::size_t k = 0; k < S.dim(); ++k) m.append_row(remap(S.vector(k), from, to, shift));
  return Subspace<F>::span(m, tol);
}

}  // namespace terp
