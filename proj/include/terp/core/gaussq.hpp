#pragma once
#include <gmpxx.h>

#include <complex>
#include <functional>
#include <ostream>
#include <string>

#include "terp/core/error.hpp"

namespace terp {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline mpz_class floor_q(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline long floor_long(const Rational& q) { return floor_q(q).get_si(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Fractional part in [0,1).
inline Rational frac(const Rational& q) { return q - Rational(floor_q(q)); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) throw InputError("bad rational literal '" + s + "'");
  if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// Exact element of Q(i).
class GaussQ {
 public:
  GaussQ() = default;
  GaussQ(long v) : re_(v), im_(0) {}  // NOLINT
  GaussQ(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT
  GaussQ(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussQ i() { return GaussQ(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  GaussQ conj() const { return GaussQ(re_, -im_); }
  Rational norm2() const { return re_ * re_ + im_ * im_; }

  GaussQ inverse() const {
    if (is_zero()) throw MathError("DivisionByZero", "division by zero in Q(i)");
    Rational n = norm2();
    return GaussQ(re_ / n, -im_ / n);
  }

  GaussQ& operator+=(const GaussQ& o) { re_ += o.re_; im_ += o.im_; return *this; }
  GaussQ& operator-=(const GaussQ& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  GaussQ& operator*=(const GaussQ& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  GaussQ& operator/=(const GaussQ& o) { return *this *= o.inverse(); }

  friend GaussQ operator+(GaussQ a, const GaussQ& b) { return a += b; }
  friend GaussQ operator-(GaussQ a, const GaussQ& b) { return a -= b; }
  friend GaussQ operator*(GaussQ a, const GaussQ& b) { return a *= b; }
  friend GaussQ operator/(GaussQ a, const GaussQ& b) { return a /= b; }
  GaussQ operator-() const { return GaussQ(-re_, -im_); }
  friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  // "a/b+c/d*i" with zero parts omitted; "i" and "-i" for unit imaginary parts.
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    if (sgn(re_) != 0) out = re_.get_str();
    if (sgn(im_) != 0) {
      Rational a = abs(im_);
      std::string mag = (a == 1) ? "i" : a.get_str() + "*i";
      if (sgn(im_) < 0) out += "-" + mag;
      else out += (out.empty() ? "" : "+") + mag;
    }
    return out;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const GaussQ& x) { return os << x.str(); }

// Exponentiation by a machine integer (negative allowed for nonzero base).
template <class R>
R ipow(const R& base, long e) {
  if (e < 0) {
    if constexpr (std::is_same_v<R, GaussQ>) return ipow(base.inverse(), -e);
    else return ipow(R(1) / base, -e);
  }
  R acc(1), b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

}  // namespace terp
