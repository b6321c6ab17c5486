#pragma once
#include <cmath>
#include <complex>
#include <type_traits>

#include "terp/core/gaussq.hpp"

namespace terp {

using Approx = std::complex<double>;

// Relative tolerance for rank decisions in approximate mode. Ignored in exact mode.
struct Tol {
  double eps = 1e-9;
};

template <class F>
struct field_traits;

template <>
struct field_traits<GaussQ> {
  static constexpr bool exact = true;
  static GaussQ conj(const GaussQ& x) { return x.conj(); }
  static double magnitude(const GaussQ& x) { return std::abs(x.to_complex()); }
  static bool is_zero(const GaussQ& x) { return x.is_zero(); }
  static GaussQ from(const GaussQ& x) { return x; }
  static GaussQ inv(const GaussQ& x) { return x.inverse(); }
  // Sign of a value that is real by construction.
  static int real_sign(const GaussQ& x) { return sgn(x.re()); }
  static double real_value(const GaussQ& x) { return x.re().get_d(); }
};

template <>
struct field_traits<Approx> {
  static constexpr bool exact = false;
  static Approx conj(const Approx& x) { return std::conj(x); }
  static double magnitude(const Approx& x) { return std::abs(x); }
  static bool is_zero(const Approx& x) { return x == Approx(0.0); }
  static Approx from(const GaussQ& x) { return x.to_complex(); }
  static Approx inv(const Approx& x) { return 1.0 / x; }
  static int real_sign(const Approx& x) { return (x.real() > 0) - (x.real() < 0); }
  static double real_value(const Approx& x) { return x.real(); }
};

template <class F>
F field_cast(const GaussQ& x) {
  return field_traits<F>::from(x);
}

template <class F>
F fconj(const F& x) {
  return field_traits<F>::conj(x);
}

template <class F>
constexpr bool is_exact_v = field_traits<F>::exact;

}  // namespace terp
