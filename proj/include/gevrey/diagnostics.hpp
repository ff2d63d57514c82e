#pragma once

#include <array>
#include <optional>

#include "gevrey/gamma.hpp"
#include "gevrey/semigroup.hpp"

namespace gevrey {

// One coefficient after Borel normalization: d = c / Gamma(1 + s/k).
struct NormalizedTerm {
  Exponent s;
  BigComplex d;
  double re_s = 0.0;
  double log_abs_d = 0.0;  // natural log of |d|, computed before exponentiating
};

// Normalizes every stored term; absent k means k = infinity (Gamma(1) = 1,
// the identity normalization).
std::vector<NormalizedTerm> borel_normalize(const FloatSeries& series,
                                            const std::optional<Rational>& k, mpfr_prec_t prec);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double se_slope = 0.0;
  double r2 = 1.0;
  double rms = 0.0;
  unsigned n = 0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

struct RadiusEstimate {
  double estimate = 0.0;  // exp(-slope) of log|d| against Re s
  double lower = 0.0;     // 2-sigma band
  double upper = 0.0;
  double confidence = 0.0;  // r^2 of the fit
  double tail_root = 0.0;   // max |d|^{1/Re s} over the deeper half
  bool unbounded = false;   // decay steepens like a convergent-factorial tail
};

// Cauchy-Hadamard style estimate for the normalized coefficients.
// Needs at least 8 usable terms (Re s > 0), else TooFewTerms.
RadiusEstimate radius_estimate(const std::vector<NormalizedTerm>& terms);

struct GrowthFit {
  double log_a = 0.0;      // envelope intercept: |d| <= A B^{Re s} everywhere
  double log_b = 0.0;      // fitted slope
  double max_margin = 0.0; // worst excess of log|d| over the least-squares line
  double slope_first = 0.0;   // segment slopes, reported for context
  double slope_second = 0.0;
  double curve = 0.0;      // coefficient of x ln x in the envelope fit
  double se_curve = 0.0;
  double noise = 0.0;      // sqrt(se1^2 + se2^2) of the two segment slopes
  bool ok = false;         // no factorial-type drift left after normalizing
};

// Fits |d_n| <= A B^{Re s_n} on the bucketed upper envelope. Whether the
// bound can hold at all is decided by regressing the envelope on
// {1, ln x, x, x ln x}: normalizing by Gamma(1 + s/k') leaves a residual
// (1/k - 1/k') x ln x, so a significantly positive x-ln-x coefficient means
// the chosen k does not tame the growth. Under-normalizing (k' < k) drives
// the coefficient negative, which is fine: the bound still holds.
GrowthFit growth_fit(const std::vector<NormalizedTerm>& terms);

// Evaluates the majorant sum |c_n| scale^{n1+n2} over the grid.
double weighted_norm(const TaylorGrid<BigComplex>& grid, double scale, mpfr_prec_t prec = 256);

struct NormSample {
  double scale = 0.0;
  double value = 0.0;
};

struct GevreyDiagnostics {
  std::optional<Rational> k;  // absent = infinite
  SemigroupBasis basis;
  std::array<long, 2> grid_dims{0, 0};
  RadiusEstimate radius;
  GrowthFit growth;
  std::vector<NormSample> norms;
};

}  // namespace gevrey
