#pragma once

// Outward-rounded interval arithmetic on MPFR endpoints.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

namespace mamlab {

/// Owning RAII handle for an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }

  std::string to_string(int digits = 20) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

 private:
  mpfr_t v_;
};

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 64) : lo_(prec), hi_(prec) {}

  static Interval from_rational(const mpq_class& q, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  static Interval from_bounds(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  static Interval from_double(double x, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_d(r.lo_.get(), x, MPFR_RNDD);
    mpfr_set_d(r.hi_.get(), x, MPFR_RNDU);
    return r;
  }
  static Interval pi(mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
    return r;
  }
  /// Enclosure of sqrt(q) for q >= 0.
  static Interval sqrt_of(const mpq_class& q, mpfr_prec_t prec) {
    Interval r = from_rational(q, prec + 8);
    Interval out(prec);
    mpfr_sqrt(out.lo_.get(), r.lo_.get(), MPFR_RNDD);
    mpfr_sqrt(out.hi_.get(), r.hi_.get(), MPFR_RNDU);
    return out;
  }

  mpfr_prec_t precision() const { return lo_.precision(); }
  const BigFloat& lower() const { return lo_; }
  const BigFloat& upper() const { return hi_; }

  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool contains(double x) const {
    return mpfr_cmp_d(lo_.get(), x) <= 0 && mpfr_cmp_d(hi_.get(), x) >= 0;
  }
  bool contains(const Interval& o) const {
    return mpfr_lessequal_p(lo_.get(), o.lo_.get()) && mpfr_greaterequal_p(hi_.get(), o.hi_.get());
  }
  /// +1 / -1 when the interval excludes zero, 0 otherwise.
  int certain_sign() const {
    if (lo_.sign() > 0) return 1;
    if (hi_.sign() < 0) return -1;
    return 0;
  }

  double midpoint() const {
    BigFloat m(precision() + 1);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m.to_double();
  }
  long double midpoint_ld() const {
    BigFloat m(precision() + 1);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m.to_long_double();
  }
  /// Upper bound on the half-width.
  double radius() const {
    BigFloat w(precision());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    mpfr_div_2ui(w.get(), w.get(), 1, MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return r;
  }
  Interval operator-() const {
    Interval r(precision());
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    return r;
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = std::max(a.precision(), b.precision());
    Interval r(p);
    BigFloat t(p);
    bool first = true;
    for (const BigFloat* x : {&a.lo_, &a.hi_})
      for (const BigFloat* y : {&b.lo_, &b.hi_}) {
        mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    return r;
  }
  /// Division; the divisor must exclude zero.
  friend Interval operator/(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = std::max(a.precision(), b.precision());
    Interval inv(p);
    mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
    mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
    return a * inv;
  }

  Interval exp() const {
    Interval r(precision());
    mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
  }
  /// cos and sin via midpoint-radius: both functions are 1-Lipschitz.
  Interval cos() const { return lipschitz_eval(&mpfr_cos); }
  Interval sin() const { return lipschitz_eval(&mpfr_sin); }

  /// "mid ± rad" in decimal.
  std::string to_string(int digits = 17) const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.*g ± %.3g", digits, midpoint(), radius());
    return buf;
  }

 private:
  Interval lipschitz_eval(int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) const {
    const mpfr_prec_t p = precision();
    BigFloat mid(p + 2), rad(p), v(p);
    mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    // rad >= max(hi - mid, mid - lo)
    BigFloat t(p);
    mpfr_sub(rad.get(), hi_.get(), mid.get(), MPFR_RNDU);
    mpfr_sub(t.get(), mid.get(), lo_.get(), MPFR_RNDU);
    mpfr_max(rad.get(), rad.get(), t.get(), MPFR_RNDU);
    Interval r(p);
    fn(v.get(), mid.get(), MPFR_RNDD);
    mpfr_sub(r.lo_.get(), v.get(), rad.get(), MPFR_RNDD);
    fn(v.get(), mid.get(), MPFR_RNDU);
    mpfr_add(r.hi_.get(), v.get(), rad.get(), MPFR_RNDU);
    if (mpfr_cmp_si(r.lo_.get(), -1) < 0) mpfr_set_si(r.lo_.get(), -1, MPFR_RNDD);
    if (mpfr_cmp_si(r.hi_.get(), 1) > 0) mpfr_set_si(r.hi_.get(), 1, MPFR_RNDU);
    return r;
  }

  BigFloat lo_, hi_;
};

}  // namespace mamlab
