#pragma once
#include <string>
#include <vector>

#include "terp/core/field.hpp"

namespace terp {

// Univariate polynomial over Q(i); c[k] is the coefficient of w^k, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  UPoly(const GaussQ& c) {  // NOLINT
    if (!c.is_zero()) c_.push_back(c);
  }
  static UPoly monomial(const GaussQ& c, int k) {
    UPoly p;
    if (c.is_zero()) return p;
    p.c_.assign(k + 1, GaussQ(0));
    p.c_[k] = c;
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return int(c_.size()) - 1; }
  const GaussQ& lead() const { return c_.back(); }
  GaussQ coeff(int k) const { return k < int(c_.size()) ? c_[k] : GaussQ(0); }

  GaussQ eval(const GaussQ& x) const {
    GaussQ acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    UPoly p;
    p.c_.assign(std::max(a.c_.size(), b.c_.size()), GaussQ(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) p.c_[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) p.c_[k] += b.c_[k];
    p.trim();
    return p;
  }
  UPoly operator-() const {
    UPoly p = *this;
    for (auto& x : p.c_) x = -x;
    return p;
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    UPoly p;
    if (a.is_zero() || b.is_zero()) return p;
    p.c_.assign(a.c_.size() + b.c_.size() - 1, GaussQ(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) p.c_[i + j] += a.c_[i] * b.c_[j];
    p.trim();
    return p;
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  // a = q b + r with deg r < deg b.
  static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
    if (b.is_zero()) throw MathError("Internal", "polynomial division by zero");
    q = UPoly();
    r = a;
    GaussQ inv = b.lead().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      UPoly t = monomial(r.lead() * inv, r.degree() - b.degree());
      q = q + t;
      r = r - t * b;
    }
  }
  UPoly monic() const {
    if (is_zero()) return *this;
    GaussQ inv = lead().inverse();
    UPoly p = *this;
    for (auto& x : p.c_) x *= inv;
    return p;
  }
  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly q, r;
      divmod(a, b, q, r);
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  std::string str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      if (c_[k].is_zero()) continue;
      std::string cs = c_[k].str();
      bool compound = !c_[k].is_real() && c_[k].re() != 0;
      if (compound) cs = "(" + cs + ")";
      std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
      std::string t = mono.empty() ? cs : (cs == "1" ? mono : (cs == "-1" ? "-" + mono : cs + "*" + mono));
      s += (s.empty() ? "" : " + ") + t;
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<GaussQ> c_;
};

// Element of Q(i)(w) in lowest terms with monic denominator.
class RatFun {
 public:
  RatFun() : den_(GaussQ(1)) {}
  RatFun(long c) : RatFun(GaussQ(c)) {}                   // NOLINT
  RatFun(const GaussQ& c) : num_(c), den_(GaussQ(1)) {}   // NOLINT
  RatFun(UPoly n, UPoly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
  static RatFun var(int power = 1) {
    if (power >= 0) return RatFun(UPoly::monomial(GaussQ(1), power), UPoly(GaussQ(1)));
    return RatFun(UPoly(GaussQ(1)), UPoly::monomial(GaussQ(1), -power));
  }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  RatFun inverse() const {
    if (is_zero()) throw MathError("Internal", "inverse of zero rational function");
    return RatFun(den_, num_);
  }
  // Value at w = x; throws if x is a pole.
  GaussQ eval(const GaussQ& x) const {
    GaussQ d = den_.eval(x);
    if (d.is_zero()) throw MathError("NotGeneric", "rational function has a pole at " + x.str());
    return num_.eval(x) / d;
  }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator*(const RatFun& a, const RatFun& b) { return RatFun(a.num_ * b.num_, a.den_ * b.den_); }
  friend RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }
  RatFun operator-() const { return RatFun(-num_, den_); }
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

  std::string str(const std::string& var = "w") const {
    if (den_.degree() == 0) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw MathError("Internal", "zero denominator");
    if (num_.is_zero()) { den_ = UPoly(GaussQ(1)); return; }
    UPoly g = UPoly::gcd(num_, den_);
    UPoly q, r;
    UPoly::divmod(num_, g, q, r);
    num_ = q;
    UPoly::divmod(den_, g, q, r);
    den_ = q;
    GaussQ l = den_.lead();
    if (!(l == GaussQ(1))) {
      UPoly inv(l.inverse());
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }
  UPoly num_, den_;
};

template <>
struct field_traits<RatFun> {
  static constexpr bool exact = true;
  static bool is_zero(const RatFun& x) { return x.is_zero(); }
  static RatFun from(const GaussQ& x) { return RatFun(x); }
  static RatFun inv(const RatFun& x) { return x.inverse(); }
  static double magnitude(const RatFun& x) { return x.is_zero() ? 0.0 : 1.0; }
};

}  // namespace terp
