#include "gevrey/solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>
#include <map>

namespace gevrey {

namespace {

constexpr unsigned kMaxSteps = 200000;

// Float-path hygiene: drop terms whose magnitude is negligible against the
// largest term (rounding debris left by exact cancellations). Exact series
// pass through untouched.
const ExactSeries& cleaned(const ExactSeries& s, mpfr_prec_t) { return s; }

FloatSeries cleaned(const FloatSeries& s, mpfr_prec_t prec) {
  mpfr_exp_t top = mpfr_get_emin();
  bool any = false;
  auto part_exp = [](const BigFloat& x) {
    return x.is_zero() ? mpfr_get_emin() : mpfr_get_exp(x.raw());
  };
  for (const auto& [e, c] : s.terms()) {
    top = std::max({top, part_exp(c.re()), part_exp(c.im())});
    any = true;
  }
  if (!any) return s;
  mpfr_exp_t cut = top - static_cast<mpfr_exp_t>(prec / 2);
  FloatSeries out(s.horizon());
  for (const auto& [e, c] : s.terms()) {
    if (std::max(part_exp(c.re()), part_exp(c.im())) <= cut) continue;
    out.add_term(e, c);
  }
  return out;
}

template <class S>
struct Lead {
  Exponent lambda;
  std::vector<S> a;  // 0..m, coefficient at lambda per derivative row
};

template <class S>
Lead<S> extract_lead(const PolyODE& f, const GPSeries<S>& phi, mpfr_prec_t prec) {
  unsigned m = f.order();
  Jet<S> jet = make_jet(phi, m);
  Lead<S> out;
  bool any = false;
  std::vector<GPSeries<S>> rows;
  rows.reserve(m + 1);
  for (unsigned i = 0; i <= m; ++i) {
    rows.push_back(cleaned(substitute(partial_derivative(f, i), jet, prec), prec));
    if (rows.back().empty()) continue;
    const Exponent& v = rows.back().valuation();
    if (!any || v < out.lambda) out.lambda = v;
    any = true;
  }
  if (!any) raise(Errc::AllLeadingZero, "every dF/du_i vanishes along the current series");
  out.a.reserve(m + 1);
  for (unsigned i = 0; i <= m; ++i) {
    auto c = rows[i].coeff(out.lambda);
    out.a.push_back(c ? *c : make_scalar<S>(GaussianRational(), prec));
  }
  return out;
}

template <class S>
S eval_chi(const Lead<S>& lead, const Exponent& s, mpfr_prec_t prec) {
  S acc = make_scalar<S>(GaussianRational(), prec);
  for (unsigned i = 0; i < lead.a.size(); ++i) {
    if (lead.a[i].is_zero()) continue;
    acc = acc + lead.a[i] * make_scalar<S>(s.v.pow(i), prec);
  }
  return acc;
}

}  // namespace

SeedVerdict validate_seed(const PolyODE& f, const ExactSeries& seed) {
  if (!seed.horizon().is_unbounded())
    raise(Errc::InvalidInput, "a seed must be an exact finite series (unbounded horizon)");
  if (!seed.empty() && sgn(seed.valuation().re()) < 0)
    raise(Errc::NegativeLeadingExponent,
          "seed leading exponent " + seed.valuation().str() + " has negative real part");
  LinearizationReport rep = linearize(f, seed);
  ExactSeries r = substitute(f, make_jet(seed, f.order()));
  SeedVerdict out;
  if (r.empty()) {
    out.valid = true;
    out.already_solution = true;
    return out;
  }
  out.residual_val = r.valuation();
  Exponent next = *out.residual_val - rep.lambda;
  out.next_exponent = next;
  if (!seed.empty()) {
    const Exponent& last = seed.terms().rbegin()->first;
    if (!(last < next)) {
      out.reason = "residual valuation " + out.residual_val->str() +
                   " requires a correction at exponent " + next.str() +
                   ", inside the seed support";
      return out;
    }
  } else if (sgn(next.re()) < 0) {
    out.reason = "first exponent " + next.str() + " would have negative real part";
    return out;
  }
  out.valid = true;
  return out;
}

template <class S>
Extension<S> extend_solution(const PolyODE& f, const ExactSeries& seed, const Rational& target,
                             mpfr_prec_t prec) {
  SeedVerdict verdict = validate_seed(f, seed);
  if (!verdict.valid) raise(Errc::NotASolutionPrefix, verdict.reason);
  unsigned m = f.order();
  GPSeries<S> phi = convert_series<S>(seed, prec);
  Lead<S> lead = extract_lead(f, phi, prec);
  std::optional<Exponent> prev_val;
  Extension<S> out;
  for (;; ++out.steps) {
    if (out.steps > kMaxSteps) raise(Errc::Inconsistent, "extension failed to terminate");
    GPSeries<S> r = cleaned(substitute(f, make_jet(phi, m), prec), prec);
    if (r.empty()) break;
    Exponent rv = r.valuation();
    if (prev_val && !(*prev_val < rv))
      raise(Errc::Inconsistent, "residual valuation failed to increase at " + rv.str());
    prev_val = rv;
    Exponent s = rv - lead.lambda;
    if (cmp(s.re(), target) > 0) {
      out.residual_val = rv;
      break;
    }
    S chi = eval_chi(lead, s, prec);
    if (chi.is_zero())
      raise(Errc::Resonance, "indicial polynomial vanishes at exponent " + s.str());
    S c = -(r.leading_coeff()) / chi;
    phi.add_term(s, c);
    // Appending at Re s <= Re lambda can disturb the frozen leading data.
    if (cmp(s.re(), lead.lambda.re()) <= 0) lead = extract_lead(f, phi, prec);
  }
  phi.set_horizon(Horizon::at(target));
  out.phi = std::move(phi);
  return out;
}

namespace {

std::vector<BigComplex> refine_roots(const std::vector<GaussianRational>& a, mpfr_prec_t prec) {
  unsigned p = static_cast<unsigned>(a.size()) - 1;
  if (p == 0) return {};
  // Companion-matrix eigenvalues in double precision...
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(p, p);
  std::complex<double> lead(a[p].re.get_d(), a[p].im.get_d());
  for (unsigned j = 0; j + 1 < p; ++j) comp(j + 1, j) = 1.0;
  for (unsigned j = 0; j < p; ++j) {
    std::complex<double> cj(a[j].re.get_d(), a[j].im.get_d());
    comp(j, p - 1) = -cj / lead;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  // ...then Newton-refined at the working precision against the exact
  // coefficients.
  std::vector<BigComplex> coeffs, dcoeffs;
  for (unsigned i = 0; i <= p; ++i) coeffs.emplace_back(a[i], prec);
  for (unsigned i = 1; i <= p; ++i)
    dcoeffs.push_back(coeffs[i] * BigComplex::from_long(static_cast<long>(i), 0, prec));
  auto horner = [](const std::vector<BigComplex>& cs, const BigComplex& w) {
    BigComplex acc = cs.back();
    for (std::size_t j = cs.size() - 1; j-- > 0;) acc = acc * w + cs[j];
    return acc;
  };
  BigFloat tol = BigFloat::pow2(-static_cast<long>(prec) + 16, prec);
  std::vector<BigComplex> roots;
  for (unsigned j = 0; j < p; ++j) {
    std::complex<double> w0 = es.eigenvalues()(j);
    BigComplex w(BigFloat::from_double(w0.real(), prec), BigFloat::from_double(w0.imag(), prec));
    for (int it = 0; it < 80; ++it) {
      BigComplex fw = horner(coeffs, w);
      BigComplex dfw = horner(dcoeffs, w);
      if (dfw.is_zero()) break;
      BigComplex dw = fw / dfw;
      w = w - dw;
      BigFloat scale = abs(w);
      if (cmp(scale, BigFloat::from_long(1, prec)) < 0) scale = BigFloat::from_long(1, prec);
      if (cmp(abs(dw), tol * scale) <= 0) break;
    }
    roots.push_back(std::move(w));
  }
  std::sort(roots.begin(), roots.end(), [](const BigComplex& x, const BigComplex& y) {
    if (int c = cmp(x.re(), y.re()); c != 0) return c < 0;
    return cmp(x.im(), y.im()) < 0;
  });
  return roots;
}

std::vector<Exponent> support_of(const ExactSeries& phi) {
  std::vector<Exponent> s;
  s.reserve(phi.size());
  for (const auto& [e, c] : phi.terms()) s.push_back(e);
  return s;
}

}  // namespace

MuChoice choose_mu(const LinearizationReport& rep, const ExactSeries& phi, const Rational& k,
                   const MuOptions& opts) {
  unsigned m = static_cast<unsigned>(rep.rows.size()) - 1;
  if (rep.p == m)
    raise(Errc::NotApplicable, "least positive slope is infinite (p = m); no reduction needed");
  std::vector<GaussianRational> a(rep.rows.size());
  for (unsigned i = 0; i <= m; ++i) a[i] = rep.rows[i].a;
  a.resize(rep.p + 1);
  std::vector<BigComplex> roots = refine_roots(a, opts.precision);

  std::vector<Exponent> s = support_of(phi);
  Rational threshold = rep.lambda.re() + Rational(2 * static_cast<long>(m - rep.p)) * k;
  BigFloat margin = BigFloat::from_double(opts.root_margin, opts.precision);

  auto evaluate = [&](std::size_t mu, double* min_margin) {
    MuConditions cond;
    cond.deep_enough = cmp(s[mu].re(), threshold) > 0;
    cond.re_increases = cmp(s[mu + 1].re(), s[mu].re()) > 0;
    cond.roots_clear = true;
    BigFloat re_smu = BigFloat::from_rational(s[mu].re(), opts.precision);
    *min_margin = std::numeric_limits<double>::infinity();
    for (const BigComplex& w : roots) {
      BigFloat gap = re_smu - w.re();
      *min_margin = std::min(*min_margin, gap.to_double());
      if (cmp(gap, margin) < 0) cond.roots_clear = false;
    }
    return cond;
  };
  auto pack = [&](std::size_t mu, const MuConditions& cond, double min_margin,
                  std::optional<MuConditions> prev) {
    MuChoice out;
    out.mu = static_cast<unsigned>(mu);
    out.s_mu = s[mu];
    for (const BigComplex& w : roots)
      out.roots.emplace_back(w.re().to_double(), w.im().to_double());
    out.min_margin = min_margin;
    out.conditions = cond;
    out.prev_failure = std::move(prev);
    return out;
  };

  if (opts.forced) {
    std::size_t mu = *opts.forced;
    if (mu + 1 >= s.size())
      raise(Errc::InsufficientTerms, "forced mu lies beyond the known support");
    double min_margin;
    MuConditions cond = evaluate(mu, &min_margin);
    return pack(mu, cond, min_margin, std::nullopt);
  }

  std::optional<MuConditions> prev;
  for (std::size_t mu = 0; mu + 1 < s.size(); ++mu) {
    double min_margin;
    MuConditions cond = evaluate(mu, &min_margin);
    if (cond.deep_enough && cond.re_increases && cond.roots_clear)
      return pack(mu, cond, min_margin, prev);
    prev = cond;
  }
  raise(Errc::InsufficientTerms,
        "no admissible mu within the known support; extend the solution further");
}

GaussianRational ReducedEquation::l_at(const GaussianRational& xi) const {
  GaussianRational w = s_mu.v + xi;
  GaussianRational acc;
  for (unsigned i = 0; i < a.size(); ++i) acc += a[i] * w.pow(i);
  return acc;
}

ReducedEquation reduce_equation(const PolyODE& f, const ExactSeries& phi, unsigned mu,
                                const LinearizationReport& rep, const Rational& k) {
  unsigned m = f.order();
  if (rep.p >= m) raise(Errc::NotApplicable, "p = m; the equation needs no reduction");
  std::vector<Exponent> s = support_of(phi);
  if (s.size() < mu + 2)
    raise(Errc::InsufficientTerms, "support too short to certify mu = " + std::to_string(mu));

  Rational threshold = rep.lambda.re() + Rational(2 * static_cast<long>(m - rep.p)) * k;
  if (!(cmp(s[mu].re(), threshold) > 0))
    raise(Errc::ConditionViolated, "Re s_mu must exceed Re lambda + 2(m-p)k");
  if (!(cmp(s[mu + 1].re(), s[mu].re()) > 0))
    raise(Errc::ConditionViolated, "Re s_{mu+1} must exceed Re s_mu");

  ReducedEquation red;
  red.mu = mu;
  red.s_mu = s[mu];
  red.lambda = rep.lambda;
  red.p = rep.p;
  red.order = m;
  red.k = k;
  red.nu = Rational(static_cast<long>(m - rep.p)) * k;

  // Prefix phi_mu and the derivative rows along it. The coefficients at
  // lambda agree with the report's (tail terms only perturb strictly above).
  ExactSeries phi_mu;
  for (unsigned j = 0; j <= mu; ++j) phi_mu.add_term(s[j], *phi.coeff(s[j]));
  Jet<GaussianRational> jet_mu = make_jet(phi_mu, m);

  red.a.assign(rep.p + 1, GaussianRational());
  for (unsigned i = 0; i <= m; ++i) {
    ExactSeries row = substitute(partial_derivative(f, i), jet_mu);
    GaussianRational ai;
    for (const auto& [e, c] : row.terms()) {
      if (e == red.lambda) {
        ai = c;
        continue;
      }
      Exponent alpha = e - red.lambda;
      if (sgn(alpha.re()) <= 0)
        raise(Errc::NonPositiveAlpha,
              "perturbation exponent " + alpha.str() + " fails Re alpha > 0 in row " +
                  std::to_string(i));
      if (i > rep.p) {
        Rational bound = Rational(static_cast<long>(i - rep.p)) * k;
        if (cmp(alpha.re(), bound) < 0)
          raise(Errc::Inconsistent,
                "row " + std::to_string(i) + " carries slope below k at " + alpha.str());
      }
      red.lprime.push_back({c, alpha, i});
    }
    bool expect_zero = i > rep.p;
    if (expect_zero ? !ai.is_zero() : !(ai == rep.rows[i].a))
      raise(Errc::Inconsistent, "leading coefficients along phi_mu disagree with the report");
    if (i <= rep.p) red.a[i] = ai;
  }
  if (red.a[rep.p].is_zero()) raise(Errc::Inconsistent, "A_p vanished along phi_mu");

  // Pure part: F(z, Phi_mu) / z^{lambda + s_mu}.
  ExactSeries residual_mu = substitute(f, jet_mu);
  Exponent shift = red.lambda + red.s_mu;
  for (const auto& [e, c] : residual_mu.terms()) {
    Exponent beta = e - shift;
    if (sgn(beta.re()) <= 0)
      raise(Errc::Inconsistent, "pure term exponent " + beta.str() + " fails Re beta > 0");
    red.nterms.push_back({c, beta, {}});
  }

  // Taylor coefficients of order >= 2: (1/Q!) d^Q F (z, Phi_mu).
  std::vector<unsigned> bound(m + 1);
  for (unsigned i = 0; i <= m; ++i) bound[i] = f.degree_in(i);
  std::vector<unsigned> q(m + 1, 0);
  auto advance = [&]() {
    for (unsigned i = 0; i <= m; ++i) {
      if (q[i] < bound[i]) {
        ++q[i];
        std::fill(q.begin(), q.begin() + i, 0u);
        return true;
      }
    }
    return false;
  };
  while (advance()) {
    unsigned total = 0;
    for (unsigned qi : q) total += qi;
    if (total < 2) continue;
    PolyODE part = f;
    bool zero = false;
    for (unsigned i = 0; i <= m && !zero; ++i)
      for (unsigned rp = 0; rp < q[i] && !zero; ++rp) {
        part = partial_derivative(part, i);
        zero = part.is_zero();
      }
    if (zero) continue;
    ExactSeries val = substitute(part, jet_mu);
    if (val.empty()) continue;
    mpz_class fact(1);
    for (unsigned qi : q)
      for (unsigned j = 2; j <= qi; ++j) fact *= j;
    GaussianRational inv_fact(Rational(1) / Rational(fact));
    GaussianRational shift_pow = red.s_mu.v;  // z^{s_mu (|Q|-1)}
    Exponent extra(shift_pow * GaussianRational(Rational(static_cast<long>(total - 1))));
    std::vector<unsigned> qt = q;
    while (!qt.empty() && qt.back() == 0) qt.pop_back();
    for (const auto& [e, c] : val.terms()) {
      Exponent beta = e + extra - red.lambda;
      if (sgn(beta.re()) <= 0)
        raise(Errc::Inconsistent, "N-term exponent " + beta.str() + " fails Re beta > 0");
      red.nterms.push_back({c * inv_fact, beta, qt});
    }
  }

  auto lp_less = [](const LprimeTerm& x, const LprimeTerm& y) {
    if (x.i != y.i) return x.i < y.i;
    return x.alpha < y.alpha;
  };
  std::sort(red.lprime.begin(), red.lprime.end(), lp_less);
  auto nt_less = [](const NTerm& x, const NTerm& y) {
    if (x.q != y.q) return x.q < y.q;
    return x.beta < y.beta;
  };
  std::sort(red.nterms.begin(), red.nterms.end(), nt_less);
  return red;
}

namespace {

// (delta + s_mu)^i x: exponentwise multiplication by (gamma + s_mu)^i.
template <class S>
GPSeries<S> apply_shifted_euler(const GPSeries<S>& x, const GaussianRational& s_mu, unsigned i,
                                mpfr_prec_t prec) {
  if (i == 0) return x;
  GPSeries<S> out(x.horizon());
  for (const auto& [e, c] : x.terms())
    out.add_term(e, c * make_scalar<S>((e.v + s_mu).pow(i), prec));
  return out;
}

template <class S>
GPSeries<S> reduced_residual(const ReducedEquation& red, const GPSeries<S>& psi,
                             mpfr_prec_t prec) {
  GPSeries<S> r;
  // L(delta) psi, exponentwise.
  for (const auto& [e, c] : psi.terms())
    r.add_term(e, c * make_scalar<S>(red.l_at(e.v), prec));
  // L' psi.
  for (const LprimeTerm& t : red.lprime) {
    GPSeries<S> part = apply_shifted_euler(psi, red.s_mu.v, t.i, prec);
    r = series_add(r, series_shift(scalar_mul(make_scalar<S>(t.coeff, prec), part), t.alpha));
  }
  // N(psi), grouped by the power pattern to share the products.
  std::map<std::vector<unsigned>, GPSeries<S>> prods;
  for (const NTerm& t : red.nterms) {
    if (t.q.empty()) {
      r.add_term(t.beta, make_scalar<S>(t.coeff, prec));
      continue;
    }
    auto it = prods.find(t.q);
    if (it == prods.end()) {
      GPSeries<S> prod =
          make_series<S>({{Exponent(), make_scalar<S>(GaussianRational::from_long(1), prec)}});
      for (unsigned i = 0; i < t.q.size(); ++i) {
        if (t.q[i] == 0) continue;
        GPSeries<S> base = apply_shifted_euler(psi, red.s_mu.v, i, prec);
        for (unsigned rp = 0; rp < t.q[i]; ++rp) prod = series_mul(prod, base);
      }
      it = prods.emplace(t.q, std::move(prod)).first;
    }
    r = series_add(r, series_shift(scalar_mul(make_scalar<S>(t.coeff, prec), it->second), t.beta));
  }
  return r;
}

}  // namespace

template <class S>
GPSeries<S> reduced_extend(const ReducedEquation& red, const Rational& target, mpfr_prec_t prec,
                           const std::vector<Exponent>* schedule) {
  GPSeries<S> psi;
  if (schedule) {
    for (std::size_t j = 1; j < schedule->size(); ++j)
      if (!((*schedule)[j - 1] < (*schedule)[j]))
        raise(Errc::InvalidInput, "schedule exponents must be strictly ascending");
    for (const Exponent& gamma : *schedule) {
      if (cmp(gamma.re(), target) > 0) break;
      GPSeries<S> r = reduced_residual(red, psi, prec);
      auto coeff = r.coeff(gamma);
      if (!coeff) continue;
      GaussianRational l = red.l_at(gamma.v);
      if (l.is_zero()) raise(Errc::Resonance, "L vanishes at gamma = " + gamma.str());
      psi.add_term(gamma, -(*coeff) / make_scalar<S>(l, prec));
    }
  } else {
    std::optional<Exponent> prev;
    for (unsigned steps = 0;; ++steps) {
      if (steps > kMaxSteps) raise(Errc::Inconsistent, "reduced extension failed to terminate");
      GPSeries<S> r = reduced_residual(red, psi, prec);
      if (r.empty()) break;
      Exponent gamma = r.valuation();
      if (prev && !(*prev < gamma))
        raise(Errc::Inconsistent, "reduced residual valuation failed to increase");
      prev = gamma;
      if (cmp(gamma.re(), target) > 0) break;
      if (sgn(gamma.re()) <= 0)
        raise(Errc::Inconsistent, "reduced solution exponent " + gamma.str() + " not positive");
      GaussianRational l = red.l_at(gamma.v);
      if (l.is_zero()) raise(Errc::Resonance, "L vanishes at gamma = " + gamma.str());
      psi.add_term(gamma, -(r.leading_coeff()) / make_scalar<S>(l, prec));
    }
  }
  psi.set_horizon(Horizon::at(target));
  return psi;
}

template Extension<GaussianRational> extend_solution<GaussianRational>(const PolyODE&,
                                                                       const ExactSeries&,
                                                                       const Rational&,
                                                                       mpfr_prec_t);
template Extension<BigComplex> extend_solution<BigComplex>(const PolyODE&, const ExactSeries&,
                                                           const Rational&, mpfr_prec_t);
template GPSeries<GaussianRational> reduced_extend<GaussianRational>(const ReducedEquation&,
                                                                     const Rational&, mpfr_prec_t,
                                                                     const std::vector<Exponent>*);
template GPSeries<BigComplex> reduced_extend<BigComplex>(const ReducedEquation&, const Rational&,
                                                         mpfr_prec_t,
                                                         const std::vector<Exponent>*);

}  // namespace gevrey
