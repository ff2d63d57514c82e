#pragma once

#include <string>
#include <vector>

#include "gevrey/series.hpp"

namespace gevrey {

// One monomial of F(z, u_0, ..., u_m): coeff * z^beta * prod u_i^{q[i]},
// where u_i stands for delta^i u. beta is a nonnegative rational.
struct OdeMonomial {
  GaussianRational coeff;
  Rational beta;
  std::vector<unsigned> q;

  unsigned total_degree() const {
    unsigned d = 0;
    for (unsigned qi : q) d += qi;
    return d;
  }
};

// Polynomial ODE F(z, u, delta u, ..., delta^m u) = 0 in canonical form:
// monomials merged, zero coefficients dropped, deterministic order.
class PolyODE {
public:
  PolyODE(unsigned order, std::vector<OdeMonomial> monomials);

  unsigned order() const { return order_; }
  const std::vector<OdeMonomial>& monomials() const { return monos_; }
  bool is_zero() const { return monos_.empty(); }

  // Largest power of u_i across monomials.
  unsigned degree_in(unsigned i) const;
  // Largest total degree in (u_0, ..., u_m).
  unsigned total_degree() const;
  // True when some beta is non-integer (extended input).
  bool has_fractional_beta() const;

private:
  unsigned order_;
  std::vector<OdeMonomial> monos_;
};

// Raw monomial-list arithmetic, shared by the parser and by tests.
using PolyVal = std::vector<OdeMonomial>;
PolyVal poly_add(const PolyVal& a, const PolyVal& b);
PolyVal poly_neg(const PolyVal& a);
PolyVal poly_mul(const PolyVal& a, const PolyVal& b);
PolyVal poly_pow(const PolyVal& a, unsigned e);
PolyVal poly_canonical(PolyVal a);

// dF/du_i as a PolyODE with the same declared order.
PolyODE partial_derivative(const PolyODE& f, unsigned i);

// Canonical single-line text form; parse(pretty_print(f)) == f.
std::string pretty_print(const PolyODE& f);

// Parses the equation grammar. declared_order < 0 means "infer from the
// highest D(u,i) used" (plain u counts as i = 0).
PolyODE parse_equation(const std::string& text, int declared_order = -1);

// Evaluates F on a jet. Horizon: unbounded jets give exact results; a jet at
// horizon Theta certifies the result up to Theta + min beta.
template <class S>
GPSeries<S> substitute(const PolyODE& f, const Jet<S>& jet, mpfr_prec_t prec = 64) {
  if (jet.order() < f.order())
    raise(Errc::IndexOutOfRange, "jet shorter than the equation order");
  GPSeries<S> acc;
  bool first = true;
  for (const OdeMonomial& mono : f.monomials()) {
    GPSeries<S> term =
        make_series<S>({{Exponent(GaussianRational(mono.beta)), make_scalar<S>(mono.coeff, prec)}});
    for (unsigned i = 0; i < mono.q.size(); ++i) {
      for (unsigned rep = 0; rep < mono.q[i]; ++rep) term = series_mul(term, jet[i]);
    }
    acc = first ? term : series_add(acc, term);
    first = false;
  }
  if (f.monomials().empty()) acc = GPSeries<S>(Horizon::unbounded());
  // Documented composition rule: a jet certified to Theta certifies the value
  // to Theta + min beta. Natural per-term horizons are never wider for the
  // jets produced by solving (valuations >= 0); keep the tighter of the two.
  const Horizon& jh = jet[0].horizon();
  if (!jh.is_unbounded() && !f.monomials().empty()) {
    Rational min_beta = f.monomials().front().beta;
    for (const OdeMonomial& mono : f.monomials())
      if (cmp(mono.beta, min_beta) < 0) min_beta = mono.beta;
    acc.set_horizon(min(acc.horizon(), Horizon::at(jh.theta() + min_beta)));
  }
  return acc;
}

}  // namespace gevrey
