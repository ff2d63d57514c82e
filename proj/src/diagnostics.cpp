#include "gevrey/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gevrey {

std::vector<NormalizedTerm> borel_normalize(const FloatSeries& series,
                                            const std::optional<Rational>& k, mpfr_prec_t prec) {
  std::vector<NormalizedTerm> out;
  out.reserve(series.size());
  for (const auto& [e, c] : series.terms()) {
    NormalizedTerm t;
    t.s = e;
    t.re_s = e.re().get_d();
    BigFloat log_abs_c = log(abs(c));
    if (k) {
      GaussianRational arg = GaussianRational(Rational(1)) + e.v / GaussianRational(*k);
      BigComplex lg = log_gamma(BigComplex(arg, prec));
      t.d = c * exp(-lg);
      t.log_abs_d = (log_abs_c - lg.re()).to_double();
    } else {
      t.d = c;
      t.log_abs_d = log_abs_c.to_double();
    }
    out.push_back(std::move(t));
  }
  return out;
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  LineFit f;
  f.n = static_cast<unsigned>(xs.size());
  if (f.n < 2) raise(Errc::TooFewTerms, "line fit needs at least two points");
  double sx = 0, sy = 0;
  for (unsigned i = 0; i < f.n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  double mx = sx / f.n, my = sy / f.n;
  double sxx = 0, sxy = 0;
  for (unsigned i = 0; i < f.n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) raise(Errc::TooFewTerms, "line fit needs distinct abscissae");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0, ss_tot = 0;
  for (unsigned i = 0; i < f.n; ++i) {
    double r = ys[i] - (f.intercept + f.slope * xs[i]);
    ss_res += r * r;
    ss_tot += (ys[i] - my) * (ys[i] - my);
  }
  f.rms = std::sqrt(ss_res / f.n);
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  f.se_slope = f.n > 2 ? std::sqrt(ss_res / (f.n - 2) / sxx) : 0.0;
  return f;
}

namespace {

std::vector<NormalizedTerm> usable(const std::vector<NormalizedTerm>& terms) {
  std::vector<NormalizedTerm> u;
  for (const NormalizedTerm& t : terms)
    if (t.re_s > 0 && std::isfinite(t.log_abs_d)) u.push_back(t);
  std::sort(u.begin(), u.end(),
            [](const NormalizedTerm& a, const NormalizedTerm& b) { return a.re_s < b.re_s; });
  return u;
}

}  // namespace

RadiusEstimate radius_estimate(const std::vector<NormalizedTerm>& terms) {
  std::vector<NormalizedTerm> u = usable(terms);
  if (u.size() < 8) raise(Errc::TooFewTerms, "radius estimate needs at least 8 usable terms");
  std::vector<double> xs, ys;
  for (const NormalizedTerm& t : u) {
    xs.push_back(t.re_s);
    ys.push_back(t.log_abs_d);
  }
  LineFit whole = fit_line(xs, ys);
  std::size_t half = u.size() / 2;
  LineFit first = fit_line({xs.begin(), xs.begin() + half}, {ys.begin(), ys.begin() + half});
  LineFit second = fit_line({xs.begin() + half, xs.end()}, {ys.begin() + half, ys.end()});

  RadiusEstimate r;
  r.estimate = std::exp(-whole.slope);
  r.lower = std::exp(-(whole.slope + 2 * whole.se_slope));
  r.upper = std::exp(-(whole.slope - 2 * whole.se_slope));
  r.confidence = std::max(0.0, whole.r2);
  double tail = 0.0;
  for (std::size_t j = half; j < u.size(); ++j)
    tail = std::max(tail, std::exp(ys[j] / xs[j]));
  r.tail_root = tail;
  // A steepening decay (slope falls markedly between the halves) signals
  // faster-than-geometric decay, i.e. an unbounded radius.
  double se = std::sqrt(first.se_slope * first.se_slope + second.se_slope * second.se_slope);
  r.unbounded = (second.slope - first.slope) < -std::max(0.5, 5 * se);
  return r;
}

namespace {

// Least squares on {1, ln x, x, x ln x}; returns the x-ln-x coefficient and
// its standard error. The basis spans log Gamma(1 + x/k) up to O(1/x) terms,
// so a mis-chosen normalization shows up purely in this coefficient.
double xlnx_coefficient(const std::vector<double>& xs, const std::vector<double>& ys,
                        double* se_out) {
  constexpr unsigned m = 4;
  const std::size_t n = xs.size();
  double xtx[m][m] = {};
  double xty[m] = {};
  for (std::size_t i = 0; i < n; ++i) {
    double lx = std::log(xs[i]);
    double row[m] = {1.0, lx, xs[i], xs[i] * lx};
    for (unsigned a = 0; a < m; ++a) {
      xty[a] += row[a] * ys[i];
      for (unsigned b = 0; b < m; ++b) xtx[a][b] += row[a] * row[b];
    }
  }
  // Gauss-Jordan with partial pivoting, keeping the inverse for the
  // covariance diagonal.
  double aug[m][2 * m] = {};
  for (unsigned a = 0; a < m; ++a) {
    for (unsigned b = 0; b < m; ++b) aug[a][b] = xtx[a][b];
    aug[a][m + a] = 1.0;
  }
  for (unsigned col = 0; col < m; ++col) {
    unsigned piv = col;
    for (unsigned r = col + 1; r < m; ++r)
      if (std::fabs(aug[r][col]) > std::fabs(aug[piv][col])) piv = r;
    if (std::fabs(aug[piv][col]) < 1e-12)
      raise(Errc::TooFewTerms, "growth fit abscissae are degenerate");
    if (piv != col) std::swap_ranges(aug[piv], aug[piv] + 2 * m, aug[col]);
    double d = aug[col][col];
    for (unsigned b = 0; b < 2 * m; ++b) aug[col][b] /= d;
    for (unsigned r = 0; r < m; ++r) {
      if (r == col) continue;
      double f = aug[r][col];
      for (unsigned b = 0; b < 2 * m; ++b) aug[r][b] -= f * aug[col][b];
    }
  }
  double beta[m];
  for (unsigned a = 0; a < m; ++a) {
    beta[a] = 0.0;
    for (unsigned b = 0; b < m; ++b) beta[a] += aug[a][m + b] * xty[b];
  }
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double lx = std::log(xs[i]);
    double pred = beta[0] + beta[1] * lx + beta[2] * xs[i] + beta[3] * xs[i] * lx;
    ssr += (ys[i] - pred) * (ys[i] - pred);
  }
  double dof = n > m ? static_cast<double>(n - m) : 1.0;
  double var = ssr / dof * aug[3][m + 3];
  *se_out = var > 0 ? std::sqrt(var) : 0.0;
  return beta[3];
}

}  // namespace

GrowthFit growth_fit(const std::vector<NormalizedTerm>& terms) {
  std::vector<NormalizedTerm> u = usable(terms);
  if (u.size() < 12) raise(Errc::TooFewTerms, "growth fit needs at least 12 usable terms");

  // Upper envelope on ~32 buckets: zero or tiny coefficients must not drag
  // the fitted line below the actual growth.
  double x0 = u.front().re_s, x1 = u.back().re_s;
  unsigned nb = 32;
  double width = (x1 - x0) / nb;
  if (width <= 0) raise(Errc::TooFewTerms, "growth fit needs spread abscissae");
  std::vector<bool> seen(nb, false);
  std::vector<double> bx(nb), by(nb);
  for (const NormalizedTerm& t : u) {
    unsigned b = std::min<unsigned>(nb - 1, static_cast<unsigned>((t.re_s - x0) / width));
    if (!seen[b] || t.log_abs_d > by[b]) {
      seen[b] = true;
      bx[b] = t.re_s;
      by[b] = t.log_abs_d;
    }
  }
  std::vector<double> xs, ys;
  for (unsigned b = 0; b < nb; ++b)
    if (seen[b]) {
      xs.push_back(bx[b]);
      ys.push_back(by[b]);
    }
  if (xs.size() < 6) raise(Errc::TooFewTerms, "growth fit needs at least 6 occupied buckets");

  LineFit whole = fit_line(xs, ys);
  std::size_t half = xs.size() / 2;
  LineFit first = fit_line({xs.begin(), xs.begin() + half}, {ys.begin(), ys.begin() + half});
  LineFit second = fit_line({xs.begin() + half, xs.end()}, {ys.begin() + half, ys.end()});

  GrowthFit g;
  g.log_b = whole.slope;
  g.slope_first = first.slope;
  g.slope_second = second.slope;
  g.noise = std::sqrt(first.se_slope * first.se_slope + second.se_slope * second.se_slope);
  double margin = -std::numeric_limits<double>::infinity();
  for (const NormalizedTerm& t : u)
    margin = std::max(margin, t.log_abs_d - (whole.intercept + whole.slope * t.re_s));
  g.max_margin = margin;
  g.log_a = whole.intercept + margin;  // lift the line until it dominates

  double se = 0.0;
  g.curve = xlnx_coefficient(xs, ys, &se);
  g.se_curve = se;
  g.ok = g.curve <= std::max(0.02, 5.0 * g.se_curve);
  return g;
}

double weighted_norm(const TaylorGrid<BigComplex>& grid, double scale, mpfr_prec_t prec) {
  BigFloat acc(prec);
  BigFloat s = BigFloat::from_double(scale, prec);
  for (const auto& [n, c] : grid.coeffs) {
    BigFloat w = BigFloat::from_long(1, prec);
    for (long j = 0; j < n[0] + n[1]; ++j) w = w * s;
    acc = acc + abs(c) * w;
  }
  return acc.to_double();
}

}  // namespace gevrey
