#pragma once
#include "terp/model/section.hpp"
#include "terp/core/subspace.hpp"

namespace terp {

inline ValidationReport validate_topological_data(const TopologicalData& top) {
  ValidationReport rep;
  const int mu = top.mu;
  bool shapes = mu > 0 && static_cast<int>(top.exponents.size()) == mu && top.nilpotent.rows() == std::size_t(mu) &&
                top.nilpotent.cols() == std::size_t(mu) && top.conjugation.rows() == std::size_t(mu) &&
                top.conjugation.cols() == std::size_t(mu) && top.pairing.rows() == std::size_t(mu) &&
                top.pairing.cols() == std::size_t(mu);
  rep.add("shapes", shapes);
  if (!shapes) return rep;

  // Ñ: nilpotent, preserves the generalized eigenspaces of the monodromy.
  Matrix<GaussQ> P = top.nilpotent;
  for (int k = 1; k < mu; ++k) P = top.nilpotent * P;
  rep.add("nilpotent", P.is_zero());
  bool graded = true;
  for (int k = 0; k < mu; ++k)
    for (int j = 0; j < mu; ++j)
      if (!top.nilpotent(k, j).is_zero() && !top.same_class(k, j)) graded = false;
  rep.add("nilpotent_respects_eigenspaces", graded);

  // K conj(K) = 1 and conj maps H_lambda to H_{conj lambda}.
  rep.add("conjugation_involutive", top.conjugation * top.conjugation.conjugate() == Matrix<GaussQ>::identity(mu));
  bool kclass = true;
  for (int k = 0; k < mu; ++k)
    for (int j = 0; j < mu; ++j)
      if (!top.conjugation(k, j).is_zero() && !top.opposite_class(k, j)) kclass = false;
  rep.add("conjugation_respects_eigenspaces", kclass);

  bool integral = true, homogeneous = true;
  std::string hdetail;
  for (int i = 0; i < mu; ++i)
    for (int j = 0; j < mu; ++j) {
      if (top.pairing(i, j).is_zero()) continue;
      const Rational& e = top.pairing_exponent[i][j];
      if (!is_integer(e)) integral = false;
      if (e != top.exponents[i] + top.exponents[j]) {
        homogeneous = false;
        hdetail = "P(s" + std::to_string(i + 1) + ",s" + std::to_string(j + 1) + ") has exponent " + e.get_str() +
                  ", expected " + Rational(top.exponents[i] + top.exponents[j]).get_str();
      }
    }
  rep.add("pairing_integral", integral);
  rep.add("pairing_homogeneous", homogeneous, hdetail);

  // P(a,b)(z) = (-1)^w P(b,a)(-z) on reference sections.
  bool sym = true;
  for (int i = 0; i < mu && integral; ++i)
    for (int j = 0; j < mu; ++j) {
      const GaussQ& a = top.pairing(i, j);
      if (a.is_zero() && top.pairing(j, i).is_zero()) continue;
      long e = floor_long(top.exponents[i] + top.exponents[j]);
      long sign = ((top.w + e) % 2 == 0) ? 1 : -1;
      if (top.pairing(j, i) != (sign > 0 ? a : -a)) sym = false;
    }
  rep.add("pairing_symmetry", sym);
  rep.add("pairing_nondegenerate", rank(top.pairing) == std::size_t(mu));

  // Flatness of P: Ñ is an infinitesimal isometry on reference sections.
  bool flat = true;
  if (homogeneous) {
    for (int i = 0; i < mu; ++i)
      for (int j = 0; j < mu; ++j) {
        auto si = Section<GaussQ>::elementary(i, top.exponents[i]);
        auto sj = Section<GaussQ>::elementary(j, top.exponents[j]);
        auto Ni = mul_z(z2nabla(si, top), -1) - GaussQ(top.exponents[i]) * si;
        auto Nj = mul_z(z2nabla(sj, top), -1) - GaussQ(top.exponents[j]) * sj;
        auto a = pair_P(Ni, sj, top);
        auto b = pair_P(si, Nj, top);
        for (auto& [e, c] : b) a[e] += c;
        for (auto& [e, c] : a)
          if (!c.is_zero()) flat = false;
      }
  }
  rep.add("pairing_flat", flat);
  return rep;
}

}  // namespace terp
