#pragma once
#include <memory>
#include <string>
#include <vector>

#include "terp/core/weight_filtration.hpp"
#include "terp/twistor/twistor.hpp"

namespace terp {

template <class F>
struct PmtsPiece {
  int l = 0;                 // weight level; the piece has weight w - l
  TopPtr top;                // topological data of the primitive graded piece
  Lattice<F> lattice;
  ValidationReport lattice_checks;
  TwistorReport<F> report;
  bool ok() const { return lattice_checks.ok() && report.polarized; }
};

template <class F>
struct PmtsReport {
  ValidationReport checks;   // hypotheses on N
  std::vector<PmtsPiece<F>> pieces;
  bool verdict = false;
};

namespace pmts_detail {

inline bool is_flat_isometry(const TopologicalData& top, const Matrix<GaussQ>& N, std::string& why) {
  for (int i = 0; i < top.mu; ++i)
    for (int j = 0; j < top.mu; ++j) {
      auto si = Section<GaussQ>::elementary(i, top.exponents[i]);
      auto sj = Section<GaussQ>::elementary(j, top.exponents[j]);
      auto Ni = Section<GaussQ>(), Nj = Section<GaussQ>();
      for (int k = 0; k < top.mu; ++k) {
        Ni.add(Slot{top.exponents[i], k}, N(k, i));
        Nj.add(Slot{top.exponents[j], k}, N(k, j));
      }
      auto a = pair_P(Ni, sj, top);
      for (auto& [e, c] : pair_P(si, Nj, top)) a[e] += c;
      for (auto& [e, c] : a)
        if (!c.is_zero()) {
          why = "P(N A" + std::to_string(i + 1) + ", A" + std::to_string(j + 1) + ") + P(A" + std::to_string(i + 1) +
                ", N A" + std::to_string(j + 1) + ") != 0";
          return false;
        }
    }
  return true;
}

template <class F>
std::vector<std::size_t> power_ranks(const Matrix<F>& N, const Subspace<F>& S, const Subspace<F>& mod, int kmax,
                                     const Tol& tol) {
  std::vector<std::size_t> r;
  Subspace<F> cur = S;
  for (int k = 1; k <= kmax; ++k) {
    cur = cur.image(N, tol);
    r.push_back(cur.sum(mod, tol).dim() - mod.dim());
  }
  return r;
}

}  // namespace pmts_detail

// Polarized mixed twistor test for (L, N): every primitive graded piece of the
// weight filtration of N, with pairing P((iN)^l ., .), is pure polarized of weight w - l.
template <class F>
PmtsReport<F> pmts_check(const Lattice<F>& L, const Matrix<GaussQ>& Nq, const Tol& tol = {}) {
  using namespace pmts_detail;
  PmtsReport<F> R;
  const auto& top = *L.top;
  const int mu = top.mu;
  if (Nq.rows() != std::size_t(mu) || Nq.cols() != std::size_t(mu)) throw InputError("N must be mu x mu");

  Matrix<GaussQ> P = Nq;
  for (int k = 1; k < mu; ++k) P = Nq * P;
  if (!P.is_zero()) throw InputError("N is not nilpotent");
  bool graded = true;
  for (int k = 0; k < mu; ++k)
    for (int j = 0; j < mu; ++j)
      if (!Nq(k, j).is_zero() && !top.same_class(k, j)) graded = false;
  bool commutes = Nq * top.nilpotent == top.nilpotent * Nq;
  bool real = top.conjugation * Nq.conjugate() == Nq * top.conjugation;
  R.checks.add("N_flat", graded && commutes, graded ? (commutes ? "" : "N does not commute with the nilpotent part")
                                                    : "N mixes eigenspaces");
  R.checks.add("N_real", real);
  std::string why;
  bool iso = is_flat_isometry(top, Nq, why);
  R.checks.add("N_isometry", iso, why);
  if (!iso) throw MathError("NotIsometry", why);

  auto E = window_E(top, L.win);
  Subspace<F> LE = window_span(L, tol);
  bool preserved = true;
  auto zN = [&](const Section<F>& s) {
    Section<F> out;
    for (auto& [sl, c] : s.terms())
      for (int k = 0; k < mu; ++k)
        if (!Nq(k, sl.index).is_zero()) out.add(Slot{sl.order + 1, k}, field_cast<F>(Nq(k, sl.index)) * c);
    return out;
  };
  for (auto& g : L.gens)
    if (!LE.contains(to_coords(zN(g), E), tol)) preserved = false;
  R.checks.add("zN_preserves_L", preserved);
  if (!preserved) throw MathError("NotPreserved", "zN does not map L into itself");

  Matrix<F> N(mu, mu);
  for (int i = 0; i < mu; ++i)
    for (int j = 0; j < mu; ++j) N(i, j) = field_cast<F>(Nq(i, j));

  // Jordan type of [zN] on L/zL against N on H^infty (ranks of powers)
  {
    auto W = window_omega(top, L.win);
    auto G = remap(LE, E, W, 0, tol);
    Subspace<F> zLE = remap(G, W, E, 1, tol);
    Matrix<F> zNm(E.size(), E.size());
    for (std::size_t c = 0; c < E.size(); ++c) {
      auto v = to_coords(zN(Section<F>::elementary(E.slots[c].index, E.slots[c].order)), E);
      for (std::size_t r = 0; r < E.size(); ++r) zNm(r, c) = v[r];
    }
    auto a = power_ranks(zNm, LE, zLE, mu, tol);
    auto b = power_ranks(N, Subspace<F>::full(mu), Subspace<F>(mu), mu, tol);
    R.checks.add("jordan_type", a == b, a == b ? "" : "ranks of powers of [zN] on L/zL differ from those of N");
  }

  auto Wp = weight_filtration(N, 0, tol);
  Subspace<F> LEfull = LE;
  bool all_ok = true;
  for (int l = 0; l <= Wp.hi; ++l) {
    Matrix<F> Nl1 = Matrix<F>::identity(mu);
    for (int t = 0; t <= l; ++t) Nl1 = N * Nl1;
    Subspace<F> U = Wp.at(l).intersect(Subspace<F>::preimage(Nl1, Wp.at(-l - 3), tol), tol);
    Subspace<F> low = Wp.at(l - 1);
    // complement basis per eigenvalue class
    std::vector<Vec<F>> Bv;
    std::vector<Rational> ex;
    std::vector<int> cls_rep;
    std::vector<bool> seen(mu, false);
    for (int j = 0; j < mu; ++j) {
      if (seen[j]) continue;
      std::vector<std::size_t> idx;
      for (int t = 0; t < mu; ++t)
        if (top.same_class(j, t)) { idx.push_back(t); seen[t] = true; }
      auto H = Subspace<F>::coordinate(mu, idx);
      for (auto& v : complement_basis(U.intersect(H, tol), low.intersect(H, tol), tol)) {
        Bv.push_back(v);
        ex.push_back(top.exponents[j]);
        cls_rep.push_back(j);
      }
    }
    const int q = int(Bv.size());
    if (q == 0) continue;

    // coordinates of u in U modulo low, in the basis Bv
    Matrix<F> Bm(0, mu);
    for (auto& v : Bv) Bm.append_row(v);
    auto coords = [&](const Vec<F>& u) {
      // solve u = sum y_k B_k + (element of low)
      Matrix<F> sys = Bm;
      for (std::size_t k = 0; k < low.dim(); ++k) sys.append_row(low.vector(k));
      Matrix<F> aug = sys.transpose();
      Matrix<F> A(mu, aug.cols() + 1);
      for (int r = 0; r < mu; ++r) {
        for (std::size_t c = 0; c < aug.cols(); ++c) A(r, c) = aug(r, c);
        A(r, aug.cols()) = u[r];
      }
      auto ns = nullspace(A, tol);
      Vec<F> y(q, F(0));
      for (std::size_t k = 0; k < ns.rows(); ++k) {
        F last = ns(k, aug.cols());
        if (field_traits<F>::magnitude(last) <= tol.eps) continue;
        for (int t = 0; t < q; ++t) y[t] = -ns(k, t) / last;
        return y;
      }
      throw MathError("Internal", "vector outside the primitive part");
    };

    auto piece_top = std::make_shared<TopologicalData>();
    auto& T = *piece_top;
    T.mu = q;
    T.w = top.w - l;
    T.exponents = ex;
    T.nilpotent = Matrix<GaussQ>(q, q);
    T.conjugation = Matrix<GaussQ>(q, q);
    T.pairing = Matrix<GaussQ>(q, q);
    T.pairing_exponent.assign(q, std::vector<Rational>(q, Rational(0)));
    if constexpr (!is_exact_v<F>) throw InputError("the mixed twistor check runs in exact mode only");
    else {
      Matrix<F> Nt(mu, mu);
      for (int i = 0; i < mu; ++i)
        for (int j = 0; j < mu; ++j) Nt(i, j) = top.nilpotent(i, j);
      Matrix<F> K(mu, mu);
      for (int i = 0; i < mu; ++i)
        for (int j = 0; j < mu; ++j) K(i, j) = top.conjugation(i, j);
      Matrix<F> Nl = Matrix<F>::identity(mu);
      for (int t = 0; t < l; ++t) Nl = N * Nl;
      for (int k = 0; k < q; ++k) {
        auto yn = coords(Nt.apply(Bv[k]));
        Vec<F> cb(mu);
        for (int r = 0; r < mu; ++r) cb[r] = fconj(Bv[k][r]);
        auto yk = coords(K.apply(cb));
        for (int t = 0; t < q; ++t) {
          T.nilpotent(t, k) = yn[t];
          T.conjugation(t, k) = yk[t];
        }
      }
      auto es = [&](const Vec<F>& v, const Rational& o) {
        Section<F> s;
        for (int r = 0; r < mu; ++r) s.add(Slot{o, r}, v[r]);
        return s;
      };
      GaussQ il(1);
      for (int t = 0; t < l; ++t) il = il * GaussQ::i();
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
          auto p = pair_P(es(Nl.apply(Bv[a]), ex[a]), es(Bv[b], ex[b]), top);
          Rational e = ex[a] + ex[b];
          T.pairing(a, b) = il * zcoeff(p, e);
          T.pairing_exponent[a][b] = e;
        }

      // alpha_1' <= alpha_1 - l, congruent to a piece exponent
      Rational a1 = L.win.alpha1 - l, best;
      bool have = false;
      for (auto& e : ex) {
        Rational c = e + Rational(floor_q(a1 - e));
        if (!have || c > best) { best = c; have = true; }
      }
      SpectralWindow win2;
      try {
        win2 = make_window(T, best);
      } catch (const InputError&) {
        all_ok = false;
        continue;
      }

      // sub-lattice: project L_E ∩ (coefficients in U) and add the top slots
      std::vector<std::size_t> in_u;
      Matrix<F> cons(0, E.size());
      Matrix<F> ann = U.annihilator(tol);
      for (std::size_t r = 0; r < ann.rows(); ++r) {
        // one constraint per order
        std::map<Rational, Vec<F>> rows;
        for (std::size_t c = 0; c < E.size(); ++c) {
          auto& v = rows[E.slots[c].order];
          if (v.empty()) v.assign(E.size(), F(0));
          v[c] = ann(r, E.slots[c].index);
        }
        for (auto& [o, v] : rows) cons.append_row(v);
      }
      Subspace<F> UE = cons.rows() ? Subspace<F>::span(nullspace(cons, tol), tol) : Subspace<F>::full(E.size());
      Subspace<F> part = LEfull.intersect(UE, tol);
      std::vector<Section<F>> gens;
      for (std::size_t k = 0; k < part.dim(); ++k) {
        Vec<F> x = part.vector(k);
        std::map<Rational, Vec<F>> by_order;
        for (std::size_t c = 0; c < E.size(); ++c) {
          auto& v = by_order[E.slots[c].order];
          if (v.empty()) v.assign(mu, F(0));
          v[E.slots[c].index] += x[c];
        }
        Section<F> g;
        for (auto& [o, v] : by_order) {
          auto y = coords(v);
          for (int t = 0; t < q; ++t)
            if (T.order_allowed(t, o)) g.add(Slot{o, t}, y[t]);
        }
        if (!g.is_zero()) gens.push_back(g);
      }
      for (int t = 0; t < q; ++t) {
        Rational o = ex[t] + Rational(floor_q(L.win.alpha_mu - ex[t]));  // largest order <= alpha_mu
        gens.push_back(Section<F>::elementary(t, o));
      }

      PmtsPiece<F> piece;
      piece.l = l;
      piece.top = piece_top;
      piece.lattice = Lattice<F>{piece_top, win2, gens};
      piece.lattice_checks = validate_lattice(piece.lattice, tol);
      if (piece.lattice_checks.ok()) piece.report = classify(piece.lattice, tol);
      all_ok = all_ok && piece.ok();
      R.pieces.push_back(std::move(piece));
    }
  }
  R.verdict = all_ok && R.checks.ok();
  return R;
}

}  // namespace terp
