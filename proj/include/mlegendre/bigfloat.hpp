#pragma once

// Thin RAII value types over MPFR. Every value carries its own precision;
// binary operations produce a result at the larger of the two precisions.

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include "mlegendre/exact.hpp"

namespace mlegendre {

using Bits = mpfr_prec_t;

class BigFloat {
 public:
  explicit BigFloat(Bits prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(double x, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  BigFloat(long x, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  BigFloat(const Integer& x, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
  }
  BigFloat(const Rational& x, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  Bits precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  /// Same value rounded to a new precision.
  BigFloat with_precision(Bits prec) const {
    BigFloat r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with value = m 2^e, 0.5 <= |m| < 1 (nonzero values only).
  long exponent2() const { return mpfr_get_exp(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Decimal scientific string with the given number of significant digits.
  std::string to_string(std::size_t digits, mpfr_rnd_t rnd = MPFR_RNDN) const {
    if (is_zero()) return "0";
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    char* buf = nullptr;
    std::string fmt = "%." + std::to_string(digits > 0 ? digits - 1 : 0) + "R*e";
    mpfr_asprintf(&buf, fmt.c_str(), rnd, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }
  /// Fixed-point decimal string with `decimals` digits after the point.
  std::string to_fixed(std::size_t decimals, mpfr_rnd_t rnd = MPFR_RNDN) const {
    char* buf = nullptr;
    std::string fmt = "%." + std::to_string(decimals) + "R*f";
    mpfr_asprintf(&buf, fmt.c_str(), rnd, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  BigFloat& operator+=(const BigFloat& o) { return apply(o, mpfr_add); }
  BigFloat& operator-=(const BigFloat& o) { return apply(o, mpfr_sub); }
  BigFloat& operator*=(const BigFloat& o) { return apply(o, mpfr_mul); }
  BigFloat& operator/=(const BigFloat& o) { return apply(o, mpfr_div); }

  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
  friend BigFloat operator-(BigFloat a) {
    mpfr_neg(a.v_, a.v_, MPFR_RNDN);
    return a;
  }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

 private:
  template <class F>
  BigFloat& apply(const BigFloat& o, F f) {
    const Bits p = std::max(precision(), o.precision());
    if (p != precision()) mpfr_prec_round(v_, p, MPFR_RNDN);
    f(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

namespace bf {

template <class F>
BigFloat unary(const BigFloat& x, F f) {
  BigFloat r(x.precision());
  f(r.get(), x.get(), MPFR_RNDN);
  return r;
}

inline BigFloat log(const BigFloat& x) { return unary(x, mpfr_log); }
inline BigFloat exp(const BigFloat& x) { return unary(x, mpfr_exp); }
inline BigFloat sqrt(const BigFloat& x) { return unary(x, mpfr_sqrt); }
inline BigFloat abs(const BigFloat& x) { return unary(x, mpfr_abs); }
inline BigFloat sin(const BigFloat& x) { return unary(x, mpfr_sin); }
inline BigFloat cos(const BigFloat& x) { return unary(x, mpfr_cos); }

inline BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r(std::max(x.precision(), y.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}
inline BigFloat hypot(const BigFloat& x, const BigFloat& y) {
  BigFloat r(std::max(x.precision(), y.precision()));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}
inline BigFloat pi(Bits prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}
inline BigFloat ln2(Bits prec) {
  BigFloat r(prec);
  mpfr_const_log2(r.get(), MPFR_RNDN);
  return r;
}
/// 2^e at the given precision.
inline BigFloat pow2(long e, Bits prec) {
  BigFloat r(prec);
  mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
  return r;
}
inline BigFloat pow_ui(const BigFloat& x, unsigned long e) {
  BigFloat r(x.precision());
  mpfr_pow_ui(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}
/// log|x| for an exact nonzero rational, correctly rounded at `prec`.
inline BigFloat log_abs(const Rational& x, Bits prec) {
  BigFloat v(Rational(abs(x)), prec + 16);
  return log(v).with_precision(prec);
}

}  // namespace bf

/// Complex number with both parts at the same precision.
struct BigComplex {
  BigFloat re;
  BigFloat im;

  explicit BigComplex(Bits prec = 64) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {
    const Bits p = std::max(re.precision(), im.precision());
    re = re.with_precision(p);
    im = im.with_precision(p);
  }

  Bits precision() const { return re.precision(); }
  BigFloat abs() const { return bf::hypot(re, im); }
  BigFloat arg() const { return bf::atan2(im, re); }
  BigComplex conj() const { return {re, -im}; }

  BigComplex& operator+=(const BigComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    const BigFloat den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  friend BigComplex operator*(const BigComplex& a, const BigFloat& s) { return {a.re * s, a.im * s}; }
};

inline BigComplex pow_ui(const BigComplex& x, unsigned long e) {
  BigComplex result(BigFloat(1L, x.precision()), BigFloat(x.precision()));
  BigComplex base = x;
  while (e > 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

}  // namespace mlegendre
