#pragma once

#include <optional>
#include <vector>

#include "gevrey/analysis.hpp"

namespace gevrey {

// Outcome of checking a seed against the equation. A seed is a finite exact
// series claimed to be a prefix of a solution.
struct SeedVerdict {
  bool valid = false;
  bool already_solution = false;        // residual is exactly zero
  std::optional<Exponent> residual_val;
  std::optional<Exponent> next_exponent;  // val(residual) - lambda, when valid
  std::string reason;                     // set when invalid
};

// Throws NegativeLeadingExponent for malformed seeds; linearization errors
// propagate. A failed prefix test is reported, not thrown.
SeedVerdict validate_seed(const PolyODE& f, const ExactSeries& seed);

template <class S>
struct Extension {
  GPSeries<S> phi;                       // horizon = target
  std::optional<Exponent> residual_val;  // residual of the returned partial sum
  unsigned steps = 0;
};

// Term-by-term Newton extension of a valid seed up to Re s <= target.
// Leading data is recomputed whenever an appended exponent could disturb it
// (Re s <= Re lambda); otherwise it is frozen, which is exact.
template <class S>
Extension<S> extend_solution(const PolyODE& f, const ExactSeries& seed, const Rational& target,
                             mpfr_prec_t prec = 64);

struct MuConditions {
  bool roots_clear = false;     // every root w of sum A_i w^i has Re w <= Re s_mu - margin
  bool re_increases = false;    // Re s_{mu+1} > Re s_mu
  bool deep_enough = false;     // Re s_mu > Re lambda + 2 (m-p) k
};

struct MuChoice {
  unsigned mu = 0;
  Exponent s_mu;
  std::vector<std::pair<double, double>> roots;  // refined roots of sum A_i w^i
  double min_margin = 0.0;                       // min over roots of Re s_mu - Re w
  MuConditions conditions;                       // all true at mu
  std::optional<MuConditions> prev_failure;      // witness that mu-1 fails
};

struct MuOptions {
  double root_margin = 1e-6;
  mpfr_prec_t precision = 256;
  std::optional<unsigned> forced;  // skip the scan and report this index
};

// Smallest index mu of the solution support satisfying the three reduction
// conditions. NotApplicable when p = m (no positive slope); InsufficientTerms
// when the known support ends before a viable mu is certified. A forced index
// is reported with whatever conditions hold there (downstream re-checks).
MuChoice choose_mu(const LinearizationReport& rep, const ExactSeries& phi,
                   const Rational& k, const MuOptions& opts = {});

struct LprimeTerm {
  GaussianRational coeff;
  Exponent alpha;  // Re alpha > 0; Re alpha >= (i-p) k for i > p
  unsigned i;
};

struct NTerm {
  GaussianRational coeff;
  Exponent beta;            // Re beta > 0
  std::vector<unsigned> q;  // powers of (delta+s_mu)^i v; empty = pure z term
};

// The equation satisfied by v in u = phi_mu + z^{s_mu} v, split as
// L(delta) v + L' v + N(v) = 0 after division by z^{lambda + s_mu}.
struct ReducedEquation {
  unsigned mu = 0;
  Exponent s_mu;
  Exponent lambda;
  unsigned p = 0;
  unsigned order = 0;                // m
  Rational k;
  Rational nu;                       // (m - p) k
  std::vector<GaussianRational> a;   // A_0..A_p
  std::vector<LprimeTerm> lprime;
  std::vector<NTerm> nterms;         // includes the pure-z part (q empty)

  // L(xi) = sum_i A_i (s_mu + xi)^i, exact.
  GaussianRational l_at(const GaussianRational& xi) const;
};

ReducedEquation reduce_equation(const PolyODE& f, const ExactSeries& phi, unsigned mu,
                                const LinearizationReport& rep, const Rational& k);

// Solves the reduced equation for v up to Re gamma <= target. With a schedule
// the frontier is the given ascending exponent list (float runs use the exact
// semigroup grid to keep exponents clean); without one it follows residual
// valuations.
template <class S>
GPSeries<S> reduced_extend(const ReducedEquation& red, const Rational& target,
                           mpfr_prec_t prec = 64,
                           const std::vector<Exponent>* schedule = nullptr);

}  // namespace gevrey
