#pragma once
#include <memory>
#include <string>
#include <vector>

#include "terp/core/matrix.hpp"

namespace terp {

// Flat data of a regular singular TERP-structure: exponents alpha'_j of the
// reference sections es(A_j, alpha'_j), the nilpotent part Ñ (acting in the
// monodromy-invariant sense, see z2nabla), the real structure
// conj(A_j) = sum_k K_kj A_k, and the pairing P(s_i, s_j) = C_ij z^{e_ij}.
struct TopologicalData {
  int mu = 0;
  int w = 0;
  std::vector<Rational> exponents;
  Matrix<GaussQ> nilpotent;
  Matrix<GaussQ> conjugation;
  Matrix<GaussQ> pairing;
  std::vector<std::vector<Rational>> pairing_exponent;

  // Optional data used only by the polarized-MHS check.
  Matrix<GaussQ> S;             // flat real pairing on the reference basis
  Matrix<GaussQ> monodromy_log; // real nilpotent N (not rescaled)
  bool has_S = false, has_monodromy_log = false;

  bool same_class(int a, int b) const { return is_integer(exponents[a] - exponents[b]); }
  bool opposite_class(int a, int b) const { return is_integer(exponents[a] + exponents[b]); }
  bool order_allowed(int j, const Rational& o) const { return is_integer(o - exponents[j]); }
  bool eigenvalue_one(int j) const { return is_integer(exponents[j]); }
};

using TopPtr = std::shared_ptr<const TopologicalData>;

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<Check> checks;
  bool ok() const {
    for (auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  void add(std::string name, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(detail)});
  }
  const Check* find(const std::string& name) const {
    for (auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

}  // namespace terp
