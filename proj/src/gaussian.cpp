#include "gevrey/gaussian.hpp"

#include "gevrey/errors.hpp"

namespace gevrey {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) raise(Errc::ZeroDivisor, "division by zero in Q(i)");
  Rational n2 = o.norm2();
  *this *= o.conj();
  re /= n2;
  im /= n2;
  return *this;
}

GaussianRational GaussianRational::pow(unsigned long e) const {
  GaussianRational acc = from_long(1);
  GaussianRational base = *this;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

std::string GaussianRational::str() const {
  if (sgn(im) == 0) return rational_str(re);
  std::string imag;
  if (cmp(im, 1) == 0)
    imag = "i";
  else if (cmp(im, -1) == 0)
    imag = "-i";
  else
    imag = rational_str(im) + "i";
  if (sgn(re) == 0) return imag;
  if (imag[0] != '-') return rational_str(re) + "+" + imag;
  return rational_str(re) + imag;
}

}  // namespace gevrey
