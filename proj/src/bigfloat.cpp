#include "gevrey/bigfloat.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "gevrey/errors.hpp"

namespace gevrey {

BigFloat BigFloat::from_rational(const Rational& r, mpfr_prec_t prec) {
  BigFloat x(prec);
  mpfr_set_q(x.v_, r.get_mpq_t(), MPFR_RNDN);
  return x;
}

BigFloat BigFloat::from_long(long n, mpfr_prec_t prec) {
  BigFloat x(prec);
  mpfr_set_si(x.v_, n, MPFR_RNDN);
  return x;
}

BigFloat BigFloat::from_double(double d, mpfr_prec_t prec) {
  BigFloat x(prec);
  mpfr_set_d(x.v_, d, MPFR_RNDN);
  return x;
}

BigFloat BigFloat::pow2(long e, mpfr_prec_t prec) {
  BigFloat x(prec);
  mpfr_set_ui_2exp(x.v_, 1, e, MPFR_RNDN);
  return x;
}

BigFloat BigFloat::pi(mpfr_prec_t prec) {
  BigFloat x(prec);
  mpfr_const_pi(x.v_, MPFR_RNDN);
  return x;
}

std::string BigFloat::str(int digits) const {
  char* out = nullptr;
  mpfr_asprintf(&out, "%.*Rg", digits, v_);
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

namespace {
mpfr_prec_t join(const BigFloat& a, const BigFloat& b) {
  return std::max(a.prec(), b.prec());
}
}  // namespace

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  if (b.is_zero()) raise(Errc::ZeroDivisor, "BigFloat division by zero");
  BigFloat r(join(a, b));
  mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(prec());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

BigFloat log(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

BigFloat exp(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_exp(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

BigFloat hypot(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r(join(y, x));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  if (b.is_zero()) raise(Errc::ZeroDivisor, "BigComplex division by zero");
  // a * conj(b) / |b|^2
  BigComplex num = a * b.conj();
  BigFloat n2 = b.re() * b.re() + b.im() * b.im();
  return {num.re() / n2, num.im() / n2};
}

BigComplex BigComplex::pow(unsigned long e) const {
  BigComplex acc = from_long(1, 0, prec());
  BigComplex base = *this;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

BigComplex log(const BigComplex& a) {
  if (a.is_zero()) raise(Errc::ZeroDivisor, "log of zero");
  return {log(abs(a)), atan2(a.im(), a.re())};
}

BigComplex exp(const BigComplex& a) {
  BigFloat m = exp(a.re());
  BigFloat c(a.prec()), s(a.prec());
  mpfr_sin_cos(s.raw(), c.raw(), a.im().raw(), MPFR_RNDN);
  return {m * c, m * s};
}

}  // namespace gevrey
