#pragma once

// Certified real arithmetic: closed intervals [lo, hi] with MPFR endpoints
// and outward rounding on every operation.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "ckbound/error.hpp"

namespace ckbound {

/// Owning wrapper around an mpfr_t.
class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  MpfrValue(const MpfrValue& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  MpfrValue(MpfrValue&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
  }
  MpfrValue& operator=(const MpfrValue& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  MpfrValue& operator=(MpfrValue&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~MpfrValue() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

class Interval {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 160;

  explicit Interval(mpfr_prec_t prec = kDefaultPrecision) : lo_(prec), hi_(prec) {
    mpfr_set_zero(lo_.get(), 1);
    mpfr_set_zero(hi_.get(), 1);
  }

  static Interval from_integer(const mpz_class& z, mpfr_prec_t prec = kDefaultPrecision) {
    Interval x(prec);
    mpfr_set_z(x.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(x.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
    return x;
  }

  static Interval from_long(long v, mpfr_prec_t prec = kDefaultPrecision) {
    return from_integer(mpz_class(v), prec);
  }

  static Interval from_rational(const mpq_class& q, mpfr_prec_t prec = kDefaultPrecision) {
    Interval x(prec);
    mpfr_set_q(x.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(x.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return x;
  }

  static Interval pi(mpfr_prec_t prec = kDefaultPrecision) {
    Interval x(prec);
    mpfr_const_pi(x.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(x.hi_.get(), MPFR_RNDU);
    return x;
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_.get()); }
  mpfr_srcptr lo() const { return lo_.get(); }
  mpfr_srcptr hi() const { return hi_.get(); }

  double lo_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
  double mid_double() const { return 0.5 * (lo_double() + hi_double()); }

  /// Width hi - lo, rounded up.
  double width() const {
    MpfrValue w(precision());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
  }

  bool contains(double v) const {
    return mpfr_cmp_d(lo_.get(), v) <= 0 && mpfr_cmp_d(hi_.get(), v) >= 0;
  }

  /// Every point of *this is strictly below every point of other.
  bool certainly_less(const Interval& other) const {
    return mpfr_less_p(hi_.get(), other.lo_.get());
  }
  bool certainly_leq(const Interval& other) const {
    return mpfr_lessequal_p(hi_.get(), other.lo_.get());
  }
  bool certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }

  bool upper_at_most_integer(const mpz_class& z) const {
    return mpfr_cmp_z(hi_.get(), z.get_mpz_t()) <= 0;
  }
  bool lower_at_least_integer(const mpz_class& z) const {
    return mpfr_cmp_z(lo_.get(), z.get_mpz_t()) >= 0;
  }

  /// Smallest integer >= hi.
  mpz_class ceil_upper() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), hi_.get(), MPFR_RNDU);
    return z;
  }

  /// hi rounded up to `digits` decimals.
  std::string upper_decimal(int digits) const { return render(hi_.get(), digits, MPFR_RNDU); }
  /// lo rounded down to `digits` decimals.
  std::string lower_decimal(int digits) const { return render(lo_.get(), digits, MPFR_RNDD); }

  friend Interval operator+(const Interval& x, const Interval& y) {
    Interval r(std::max(x.precision(), y.precision()));
    mpfr_add(r.lo_.get(), x.lo_.get(), y.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), x.hi_.get(), y.hi_.get(), MPFR_RNDU);
    return r;
  }

  friend Interval operator-(const Interval& x, const Interval& y) {
    Interval r(std::max(x.precision(), y.precision()));
    mpfr_sub(r.lo_.get(), x.lo_.get(), y.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), x.hi_.get(), y.lo_.get(), MPFR_RNDU);
    return r;
  }

  friend Interval operator-(const Interval& x) {
    Interval r(x.precision());
    mpfr_neg(r.lo_.get(), x.hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), x.lo_.get(), MPFR_RNDU);
    return r;
  }

  friend Interval operator*(const Interval& x, const Interval& y) {
    return combine(x, y, mpfr_mul);
  }

  friend Interval operator/(const Interval& x, const Interval& y) {
    if (mpfr_sgn(y.lo_.get()) <= 0 && mpfr_sgn(y.hi_.get()) >= 0) {
      throw Error(ErrorCode::InvalidParams, "interval division by an interval containing 0");
    }
    return combine(x, y, mpfr_div);
  }

  friend Interval log(const Interval& x) {
    if (mpfr_sgn(x.lo_.get()) <= 0) {
      throw Error(ErrorCode::InvalidParams, "interval log of a non-positive interval");
    }
    return monotone(x, mpfr_log);
  }

  friend Interval exp(const Interval& x) { return monotone(x, mpfr_exp); }

  friend Interval sqrt(const Interval& x) {
    if (mpfr_sgn(x.lo_.get()) < 0) {
      throw Error(ErrorCode::InvalidParams, "interval sqrt of a negative interval");
    }
    return monotone(x, mpfr_sqrt);
  }

  /// x^k for a non-negative interval and k >= 0.
  friend Interval pow(const Interval& x, unsigned long k) {
    if (mpfr_sgn(x.lo_.get()) < 0) {
      throw Error(ErrorCode::InvalidParams, "interval pow needs a non-negative base");
    }
    Interval r(x.precision());
    mpfr_pow_ui(r.lo_.get(), x.lo_.get(), k, MPFR_RNDD);
    mpfr_pow_ui(r.hi_.get(), x.hi_.get(), k, MPFR_RNDU);
    return r;
  }

  /// log10 of a positive interval.
  friend Interval log10(const Interval& x) {
    if (mpfr_sgn(x.lo_.get()) <= 0) {
      throw Error(ErrorCode::InvalidParams, "interval log10 of a non-positive interval");
    }
    return monotone(x, mpfr_log10);
  }

  friend Interval hull(const Interval& x, const Interval& y) {
    Interval r(std::max(x.precision(), y.precision()));
    mpfr_min(r.lo_.get(), x.lo_.get(), y.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), x.hi_.get(), y.hi_.get(), MPFR_RNDU);
    return r;
  }

 private:
  using Binary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  using Unary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

  static Interval combine(const Interval& x, const Interval& y, Binary op) {
    const mpfr_prec_t prec = std::max(x.precision(), y.precision());
    Interval r(prec);
    MpfrValue down(prec), up(prec);
    bool first = true;
    for (mpfr_srcptr a : {x.lo_.get(), x.hi_.get()}) {
      for (mpfr_srcptr b : {y.lo_.get(), y.hi_.get()}) {
        op(down.get(), a, b, MPFR_RNDD);
        op(up.get(), a, b, MPFR_RNDU);
        if (first || mpfr_less_p(down.get(), r.lo_.get())) mpfr_set(r.lo_.get(), down.get(), MPFR_RNDD);
        if (first || mpfr_greater_p(up.get(), r.hi_.get())) mpfr_set(r.hi_.get(), up.get(), MPFR_RNDU);
        first = false;
      }
    }
    return r;
  }

  static Interval monotone(const Interval& x, Unary op) {
    Interval r(x.precision());
    op(r.lo_.get(), x.lo_.get(), MPFR_RNDD);
    op(r.hi_.get(), x.hi_.get(), MPFR_RNDU);
    return r;
  }

  static std::string render(mpfr_srcptr v, int digits, mpfr_rnd_t rnd) {
    MpfrValue scaled(mpfr_get_prec(v) + 64);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpfr_mul_z(scaled.get(), v, scale.get_mpz_t(), rnd);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), scaled.get(), rnd);
    const bool negative = z < 0;
    std::string s = mpz_class(abs(z)).get_str();
    if (static_cast<int>(s.size()) <= digits) {
      s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
    }
    if (digits > 0) s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    return negative ? "-" + s : s;
  }

  MpfrValue lo_;
  MpfrValue hi_;
};

}  // namespace ckbound
