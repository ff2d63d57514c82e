#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "gevrey/gaussian.hpp"

namespace gevrey {

// RAII wrapper over mpfr_t. Precision travels with the value (no global
// default is touched); binary operations compute at the larger operand
// precision, round-to-nearest.
class BigFloat {
public:
  explicit BigFloat(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_rational(const Rational& r, mpfr_prec_t prec);
  static BigFloat from_long(long n, mpfr_prec_t prec);
  static BigFloat from_double(double d, mpfr_prec_t prec);
  // 2^e at the given precision (exact).
  static BigFloat pow2(long e, mpfr_prec_t prec);
  static BigFloat pi(mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sgn() const { return mpfr_sgn(v_); }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Decimal, round-trippable at `digits` significant digits.
  std::string str(int digits) const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  BigFloat operator-() const;
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

  friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return cmp(a, b) == 0; }

  friend BigFloat abs(const BigFloat& a);
  friend BigFloat sqrt(const BigFloat& a);
  friend BigFloat log(const BigFloat& a);
  friend BigFloat exp(const BigFloat& a);
  friend BigFloat hypot(const BigFloat& a, const BigFloat& b);
  friend BigFloat atan2(const BigFloat& y, const BigFloat& x);

private:
  mpfr_t v_;
};

// Complex number over two BigFloats. Arithmetic is exact-rounding MPFR
// composition; is_zero means exactly zero in both parts (series code relies
// on never storing debris it cannot see).
class BigComplex {
public:
  BigComplex() : re_(64), im_(64) {}
  explicit BigComplex(mpfr_prec_t prec) : re_(prec), im_(prec) {}
  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
  BigComplex(const GaussianRational& g, mpfr_prec_t prec)
      : re_(BigFloat::from_rational(g.re, prec)), im_(BigFloat::from_rational(g.im, prec)) {}

  static BigComplex from_long(long r, long i, mpfr_prec_t prec) {
    return {BigFloat::from_long(r, prec), BigFloat::from_long(i, prec)};
  }

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  BigComplex conj() const { return {re_, -im_}; }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  BigComplex operator-() const { return {-re_, -im_}; }
  BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
  BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }
  BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }

  friend bool operator==(const BigComplex& a, const BigComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  BigComplex pow(unsigned long e) const;
  friend BigFloat abs(const BigComplex& a) { return hypot(a.re_, a.im_); }
  // Principal branch: (log|z|, atan2(Im, Re)).
  friend BigComplex log(const BigComplex& a);
  friend BigComplex exp(const BigComplex& a);

private:
  BigFloat re_;
  BigFloat im_;
};

}  // namespace gevrey
