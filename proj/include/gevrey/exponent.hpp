#pragma once

#include <compare>
#include <optional>
#include <string>

#include "gevrey/gaussian.hpp"

namespace gevrey {

// Exponent of z in a generalized power series: a Gaussian rational, totally
// ordered lexicographically by (Re, Im). That order drives every map of terms,
// valuation extraction and the extension frontier.
struct Exponent {
  GaussianRational v;

  Exponent() = default;
  explicit Exponent(GaussianRational g) : v(std::move(g)) {}
  Exponent(Rational re, Rational im) : v(std::move(re), std::move(im)) {}
  static Exponent from_long(long re, long im = 0) {
    return Exponent(GaussianRational::from_long(re, im));
  }

  const Rational& re() const { return v.re; }
  const Rational& im() const { return v.im; }

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.v == b.v; }
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
    if (int c = cmp(a.v.re, b.v.re); c != 0)
      return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (int c = cmp(a.v.im, b.v.im); c != 0)
      return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Exponent operator+(const Exponent& o) const { return Exponent(v + o.v); }
  Exponent operator-(const Exponent& o) const { return Exponent(v - o.v); }

  std::string str() const { return v.str(); }
};

// exp_cmp: the published name for the total order above.
inline std::strong_ordering exp_cmp(const Exponent& a, const Exponent& b) { return a <=> b; }

// Certification horizon of a series: either a finite rational bound Theta
// (every term with Re s <= Theta is present and exact) or unbounded (the
// series is exact in full, e.g. a seed polynomial or a reduction residual).
class Horizon {
public:
  static Horizon unbounded() { return Horizon(); }
  static Horizon at(Rational theta) { return Horizon(std::move(theta)); }

  bool is_unbounded() const { return !theta_.has_value(); }
  const Rational& theta() const { return *theta_; }

  // Does the horizon certify terms at real part `re`?
  bool admits(const Rational& re) const { return is_unbounded() || cmp(re, *theta_) <= 0; }

  Horizon shifted(const Rational& d) const {
    return is_unbounded() ? unbounded() : at(*theta_ + d);
  }

  friend Horizon min(const Horizon& a, const Horizon& b) {
    if (a.is_unbounded()) return b;
    if (b.is_unbounded()) return a;
    return at(cmp(*a.theta_, *b.theta_) <= 0 ? *a.theta_ : *b.theta_);
  }

  friend bool operator==(const Horizon& a, const Horizon& b) {
    if (a.is_unbounded() != b.is_unbounded()) return false;
    return a.is_unbounded() || cmp(*a.theta_, *b.theta_) == 0;
  }

  std::string str() const { return is_unbounded() ? "inf" : rational_str(*theta_); }

private:
  Horizon() = default;
  explicit Horizon(Rational t) : theta_(std::move(t)) {}
  std::optional<Rational> theta_;
};

}  // namespace gevrey
