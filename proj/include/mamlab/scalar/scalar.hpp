#pragma once

// Elements of Q(s_1, ..., s_k) in canonical form.
//
// A Scalar is num/den with gcd(num, den) = 1 and den monic (leading
// coefficient 1 in lex order). Zero is 0/1. The canonical form is unique, so
// equality is structural and the zero test is exact.

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "mamlab/error.hpp"
#include "mamlab/scalar/polynomial.hpp"
#include "mamlab/scalar/symbols.hpp"

namespace mamlab {

class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(long v) : num_(v), den_(1) {}
  Scalar(const mpq_class& q) : num_(q), den_(1) {}
  explicit Scalar(Polynomial p) : num_(std::move(p)), den_(1) {}

  static Scalar symbol(std::size_t index) { return Scalar(Polynomial::variable(index)); }

  /// num/den reduced to canonical form; throws DomainError when den is zero.
  static Scalar fraction(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw DomainError("division by zero");
    Scalar s;
    s.num_ = num;
    s.den_ = den;
    s.reduce();
    return s;
  }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  /// True for elements of Q.
  bool is_rational() const { return num_.is_constant() && den_.is_one(); }
  mpq_class rational_value() const { return num_.constant_value(); }

  Scalar operator-() const {
    Scalar r(*this);
    r.num_ = -r.num_;
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_one() && b.den_.is_one()) return Scalar(a.num_ + b.num_);
    if (a.den_ == b.den_) return fraction(a.num_ + b.num_, a.den_);
    const Polynomial g = gcd(a.den_, b.den_);
    const Polynomial ac = *divide_exact(b.den_, g);  // cofactor for a
    const Polynomial bc = *divide_exact(a.den_, g);
    return fraction(a.num_ * ac + b.num_ * bc, a.den_ * ac);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();
    if (a.is_rational()) return b.scaled(a.rational_value());
    if (b.is_rational()) return a.scaled(b.rational_value());
    const Polynomial g1 = gcd(a.num_, b.den_);
    const Polynomial g2 = gcd(b.num_, a.den_);
    Scalar r;
    r.num_ = *divide_exact(a.num_, g1) * *divide_exact(b.num_, g2);
    r.den_ = *divide_exact(a.den_, g2) * *divide_exact(b.den_, g1);
    r.normalize_leading();
    return r;
  }

  Scalar inverse() const {
    if (is_zero()) throw DomainError("division by zero");
    Scalar r;
    r.num_ = den_;
    r.den_ = num_;
    r.normalize_leading();
    return r;
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    if (b.is_rational()) return a.scaled(mpq_class(1) / b.rational_value());
    return a * b.inverse();
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar scaled(const mpq_class& c) const {
    if (sgn(c) == 0) return Scalar();
    Scalar r(*this);
    r.num_ = r.num_.scaled(c);
    return r;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Interval enclosure of the value with symbols at precision `prec`;
  /// nullopt when the denominator enclosure contains zero.
  std::optional<Interval> enclose(const SymbolTable& table, mpfr_prec_t prec) const;

  /// Fully parenthesised canonical text accepted by parse_scalar.
  std::string to_string(const SymbolTable& table) const;

 private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    if (!den_.is_constant()) {
      const Polynomial g = gcd(num_, den_);
      if (!g.is_one()) {
        num_ = *divide_exact(num_, g);
        den_ = *divide_exact(den_, g);
      }
    }
    normalize_leading();
  }
  void normalize_leading() {
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    const mpq_class lc = den_.leading_coeff();
    if (lc != 1) {
      const mpq_class inv = mpq_class(1) / lc;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  Polynomial num_, den_;
};

using ScalarVector = std::vector<Scalar>;

inline Interval enclose_polynomial(const Polynomial& p, const std::vector<Interval>& syms, mpfr_prec_t prec) {
  Interval acc = Interval::from_rational(0, prec);
  for (const auto& t : p.terms()) {
    Interval term = Interval::from_rational(t.coeff, prec);
    const auto& e = t.mono.exponents();
    for (std::size_t v = 0; v < e.size(); ++v)
      for (std::uint32_t k = 0; k < e[v]; ++k) term = term * syms.at(v);
    acc = acc + term;
  }
  return acc;
}

inline std::vector<Interval> symbol_enclosures(const SymbolTable& table, mpfr_prec_t prec) {
  std::vector<Interval> syms;
  syms.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) syms.push_back(table.enclosure(i, prec));
  return syms;
}

inline std::optional<Interval> Scalar::enclose(const SymbolTable& table, mpfr_prec_t prec) const {
  const auto syms = symbol_enclosures(table, prec);
  Interval n = enclose_polynomial(num_, syms, prec);
  if (den_.is_one()) return n;
  Interval d = enclose_polynomial(den_, syms, prec);
  if (d.contains_zero()) return std::nullopt;
  return n / d;
}

namespace detail {

inline std::string rational_text(const mpq_class& q) { return q.get_str(10); }

inline std::string polynomial_text(const Polynomial& p, const SymbolTable& table) {
  if (p.is_zero()) return "0";
  std::string out = "(";
  bool first = true;
  for (const auto& t : p.terms()) {
    if (!first) out += " + ";
    first = false;
    std::string term = "(";
    bool need_star = false;
    if (t.mono.is_one() || t.coeff != 1) {
      term += rational_text(t.coeff);
      need_star = true;
    }
    const auto& e = t.mono.exponents();
    for (std::size_t v = 0; v < e.size(); ++v)
      for (std::uint32_t k = 0; k < e[v]; ++k) {
        if (need_star) term += "*";
        term += table[v].name;
        need_star = true;
      }
    out += term + ")";
  }
  return out + ")";
}

}  // namespace detail

inline std::string Scalar::to_string(const SymbolTable& table) const {
  if (is_zero()) return "0";
  if (den_.is_one()) return detail::polynomial_text(num_, table);
  return "(" + detail::polynomial_text(num_, table) + "/" + detail::polynomial_text(den_, table) + ")";
}

}  // namespace mamlab
