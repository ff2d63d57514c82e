#include "gevrey/gamma.hpp"

#include <mutex>
#include <vector>

#include "gevrey/errors.hpp"

namespace gevrey {

namespace {

std::mutex bern_mutex;
std::vector<Rational> bern_cache;  // B_0, B_1, ...

// B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
void grow_bernoulli(unsigned n) {
  if (bern_cache.empty()) bern_cache.push_back(Rational(1));
  while (bern_cache.size() <= n) {
    unsigned m = static_cast<unsigned>(bern_cache.size());
    Rational acc(0);
    mpz_class binom(1);  // C(m+1, 0)
    for (unsigned j = 0; j < m; ++j) {
      acc += Rational(binom) * bern_cache[j];
      binom = binom * (m + 1 - j) / (j + 1);  // exact at every step
    }
    Rational b = -acc / Rational(static_cast<long>(m) + 1);
    b.canonicalize();
    bern_cache.push_back(std::move(b));
  }
}

}  // namespace

Rational bernoulli(unsigned n) {
  std::lock_guard<std::mutex> lock(bern_mutex);
  grow_bernoulli(n);
  return bern_cache[n];
}

BigComplex log_gamma(const BigComplex& w) {
  mpfr_prec_t prec = w.prec();
  mpfr_prec_t work = prec + 64;
  if (w.im().is_zero() && w.re().is_integer() && w.re().sgn() <= 0)
    raise(Errc::PoleOfGamma, "log Gamma pole at " + w.re().str(12));

  // Shift until Re z is large enough for the Stirling tail to clear the
  // working precision, then subtract the collected logs.
  long t = std::max<long>(20, work / 4);
  BigComplex z{BigFloat(work), BigFloat(work)};
  z = z + w;  // copy at working precision
  BigComplex shift_sum(work);
  BigFloat tre = BigFloat::from_long(t, work);
  long guard = 0;
  while (cmp(z.re(), tre) < 0) {
    if (++guard > (1 << 20)) raise(Errc::Inconsistent, "log Gamma shift failed to terminate");
    shift_sum = shift_sum + log(z);
    z = z + BigComplex::from_long(1, 0, work);
  }

  // lnGamma(z) = (z - 1/2) log z - z + ln(2 pi)/2 + sum B_{2n} / (2n(2n-1) z^{2n-1})
  BigComplex logz = log(z);
  BigComplex half(BigFloat::from_rational(Rational(1, 2), work), BigFloat(work));
  BigComplex acc = (z - half) * logz - z;
  BigFloat two_pi = BigFloat::pi(work) + BigFloat::pi(work);
  acc = acc + BigComplex(log(two_pi) / BigFloat::from_long(2, work), BigFloat(work));

  BigComplex zinv = BigComplex::from_long(1, 0, work) / z;
  BigComplex zinv2 = zinv * zinv;
  BigComplex zpow = zinv;  // z^{1-2n} for n = 1
  BigFloat floor_ = BigFloat::pow2(-static_cast<long>(work), work);
  BigFloat scale = abs(acc);
  if (cmp(scale, BigFloat::from_long(1, work)) < 0) scale = BigFloat::from_long(1, work);
  BigFloat tol = floor_ * scale;
  for (unsigned n = 1; n <= static_cast<unsigned>(work); ++n) {
    Rational coeff = bernoulli(2 * n) / Rational(static_cast<long>(2 * n) * (2 * n - 1));
    BigComplex term = BigComplex(BigFloat::from_rational(coeff, work), BigFloat(work)) * zpow;
    acc = acc + term;
    if (cmp(abs(term), tol) < 0) break;
    zpow = zpow * zinv2;
  }

  acc = acc - shift_sum;
  // Round back to the caller's precision.
  BigFloat re(prec), im(prec);
  mpfr_set(re.raw(), acc.re().raw(), MPFR_RNDN);
  mpfr_set(im.raw(), acc.im().raw(), MPFR_RNDN);
  return {std::move(re), std::move(im)};
}

BigFloat gamma_abs(const BigComplex& w) { return exp(log_gamma(w).re()); }

}  // namespace gevrey
