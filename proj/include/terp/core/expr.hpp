#pragma once
#include <cctype>
#include <string>
#include <vector>

#include "terp/core/mpoly.hpp"

namespace terp {

// Parses coefficient expressions such as "1/2", "-3/4*i", "r^2/2 + t", "(1+i)*x*y^-1"
// into Laurent polynomials in the given variables. "i" is the imaginary unit.
class ExprParser {
 public:
  ExprParser(std::string src, std::vector<std::string> vars) : s_(std::move(src)), vars_(std::move(vars)) {}

  MPoly parse() {
    MPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("expression '" + s_ + "': " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
    return false;
  }
  MPoly expr() {
    MPoly p = term();
    for (;;) {
      if (accept('+')) p += term();
      else if (accept('-')) p -= term();
      else return p;
    }
  }
  MPoly term() {
    MPoly p = unary();
    for (;;) {
      if (accept('*')) p *= unary();
      else if (accept('/')) {
        MPoly d = unary();
        if (d.is_zero()) fail("division by zero");
        if (!d.is_monomial()) fail("division by a non-monomial");
        p *= d.monomial_inverse();
      } else return p;
    }
  }
  MPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  MPoly power() {
    MPoly base = atom();
    if (!accept('^')) return base;
    skip();
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    skip();
    std::size_t st = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (st == pos_) fail("expected integer exponent");
    long e = std::stol(s_.substr(st, pos_ - st));
    if (neg) {
      if (base.is_zero() || !base.is_monomial()) fail("negative power of a non-monomial");
      base = base.monomial_inverse();
    }
    MPoly r(1);
    for (long k = 0; k < e; ++k) r *= base;
    return r;
  }
  MPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly p = expr();
      if (!accept(')')) fail("missing ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t st = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      std::string num = s_.substr(st, pos_ - st);
      auto dot = num.find('.');
      Rational q;
      if (dot == std::string::npos) {
        q = parse_rational(num);
      } else {
        std::string ip = num.substr(0, dot), fp = num.substr(dot + 1);
        if (fp.find('.') != std::string::npos) fail("bad number '" + num + "'");
        mpz_class den = 1;
        for (std::size_t k = 0; k < fp.size(); ++k) den *= 10;
        q = Rational(mpz_class((ip.empty() ? "0" : ip) + fp, 10), den);
        q.canonicalize();
      }
      return MPoly(GaussQ(q));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(st, pos_ - st);
      if (id == "i") return MPoly(GaussQ::i());
      for (std::size_t k = 0; k < vars_.size(); ++k)
        if (vars_[k] == id) return MPoly::var(k, vars_.size());
      fail("unknown parameter '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  std::vector<std::string> vars_;
  std::size_t pos_ = 0;
};

inline MPoly parse_expr(const std::string& s, const std::vector<std::string>& vars = {}) {
  return ExprParser(s, vars).parse();
}

inline GaussQ parse_scalar(const std::string& s) {
  MPoly p = parse_expr(s);
  if (!p.is_constant()) throw InputError("expected a constant, got '" + s + "'");
  return p.constant();
}

}  // namespace terp
