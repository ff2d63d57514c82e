#pragma once

#include <compare>
#include <string>

#include "gevrey/rational.hpp"

namespace gevrey {

// Element of Q(i): exact complex rational. Division is exact (conjugate trick);
// dividing by zero throws Errc::ZeroDivisor.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(Rational r) : re(std::move(r)), im(0) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  static GaussianRational from_long(long r, long i = 0) {
    return {rat_from_long(r), rat_from_long(i)};
  }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re, -im}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return cmp(a.re, b.re) == 0 && cmp(a.im, b.im) == 0;
  }

  GaussianRational pow(unsigned long e) const;

  // "3", "-1/2", "i", "1+2i", "1/2-3/4i"
  std::string str() const;
};

}  // namespace gevrey
