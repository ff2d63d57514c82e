#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gevrey/bigfloat.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/exponent.hpp"

namespace gevrey {

// Coefficient conversion from the exact scalar. The float overload carries a
// working precision; the exact overload ignores it.
inline GaussianRational scalar_from_exact(const GaussianRational& g, mpfr_prec_t, GaussianRational*) {
  return g;
}
inline BigComplex scalar_from_exact(const GaussianRational& g, mpfr_prec_t prec, BigComplex*) {
  return BigComplex(g, prec);
}

template <class S>
S make_scalar(const GaussianRational& g, mpfr_prec_t prec) {
  return scalar_from_exact(g, prec, static_cast<S*>(nullptr));
}

// Generalized power series: finitely many stored terms c z^s with Gaussian
// rational exponents, ordered by (Re, Im), plus a certification horizon.
// Invariants: no zero coefficient is stored; every stored exponent satisfies
// Re s <= horizon. Terms past the horizon are unknown, not zero.
template <class S>
class GPSeries {
public:
  using TermMap = std::map<Exponent, S>;

  GPSeries() : horizon_(Horizon::unbounded()) {}
  explicit GPSeries(Horizon h) : horizon_(std::move(h)) {}

  const TermMap& terms() const { return terms_; }
  const Horizon& horizon() const { return horizon_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Accumulates c z^e; silently drops terms past the horizon (they are not
  // representable) and erases coefficients that cancel to zero.
  void add_term(const Exponent& e, const S& c) {
    if (c.is_zero() || !horizon_.admits(e.re())) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  // Least exponent in (Re, Im) order.
  const Exponent& valuation() const {
    if (terms_.empty()) raise(Errc::EmptySeries, "valuation of a series with no certified terms");
    return terms_.begin()->first;
  }

  const S& leading_coeff() const {
    if (terms_.empty()) raise(Errc::EmptySeries, "leading coefficient of an empty series");
    return terms_.begin()->second;
  }

  std::optional<S> coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    if (it == terms_.end()) return std::nullopt;
    return it->second;
  }

  void set_horizon(Horizon h) {
    horizon_ = std::move(h);
    if (horizon_.is_unbounded()) return;
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (!horizon_.admits(it->first.re()))
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  friend bool operator==(const GPSeries& a, const GPSeries& b) {
    if (!(a.horizon_ == b.horizon_) || a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib) {
      if (!(ia->first == ib->first) || !(ia->second == ib->second)) return false;
    }
    return true;
  }

private:
  TermMap terms_;
  Horizon horizon_;
};

using ExactSeries = GPSeries<GaussianRational>;
using FloatSeries = GPSeries<BigComplex>;

template <class S>
GPSeries<S> make_series(std::vector<std::pair<Exponent, S>> terms,
                        Horizon h = Horizon::unbounded()) {
  GPSeries<S> out(std::move(h));
  for (auto& [e, c] : terms) out.add_term(e, c);
  return out;
}

// Lower certified bound on Re of any (possibly unstored) term: Re of the
// valuation when terms exist, otherwise the horizon itself.
template <class S>
std::optional<Rational> lower_re_bound(const GPSeries<S>& a) {
  if (!a.empty()) return a.valuation().re();
  if (a.horizon().is_unbounded()) return std::nullopt;  // exact zero: bound +inf
  return a.horizon().theta();
}

template <class S>
GPSeries<S> series_add(const GPSeries<S>& a, const GPSeries<S>& b) {
  GPSeries<S> out(min(a.horizon(), b.horizon()));
  for (const auto& [e, c] : a.terms()) out.add_term(e, c);
  for (const auto& [e, c] : b.terms()) out.add_term(e, c);
  return out;
}

template <class S>
GPSeries<S> series_neg(const GPSeries<S>& a) {
  GPSeries<S> out(a.horizon());
  for (const auto& [e, c] : a.terms()) out.add_term(e, -c);
  return out;
}

template <class S>
GPSeries<S> series_sub(const GPSeries<S>& a, const GPSeries<S>& b) {
  return series_add(a, series_neg(b));
}

template <class S>
GPSeries<S> scalar_mul(const S& k, const GPSeries<S>& a) {
  GPSeries<S> out(a.horizon());
  if (k.is_zero()) return out;
  for (const auto& [e, c] : a.terms()) out.add_term(e, k * c);
  return out;
}

namespace detail {
// Horizon of a product: a term of a*b is unknown once either factor's
// contribution passes its horizon, shifted by the other factor's lowest
// possible exponent.
template <class S>
Horizon mul_horizon(const GPSeries<S>& a, const GPSeries<S>& b) {
  Horizon h = Horizon::unbounded();
  auto la = lower_re_bound(a);
  auto lb = lower_re_bound(b);
  if (!a.horizon().is_unbounded())
    h = lb ? min(h, a.horizon().shifted(*lb)) : h;
  if (!b.horizon().is_unbounded())
    h = la ? min(h, b.horizon().shifted(*la)) : h;
  return h;
}
}  // namespace detail

template <class S>
GPSeries<S> series_mul(const GPSeries<S>& a, const GPSeries<S>& b) {
  GPSeries<S> out(detail::mul_horizon(a, b));
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      Exponent e = ea + eb;
      if (!out.horizon().admits(e.re())) continue;
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

template <class S>
GPSeries<S> series_pow(const GPSeries<S>& a, unsigned e, mpfr_prec_t prec) {
  GPSeries<S> acc = make_series<S>({{Exponent(), make_scalar<S>(GaussianRational::from_long(1), prec)}});
  for (unsigned j = 0; j < e; ++j) acc = series_mul(acc, a);
  return acc;
}

// Multiply by z^d: shifts every exponent and the horizon by d.
template <class S>
GPSeries<S> series_shift(const GPSeries<S>& a, const Exponent& d) {
  GPSeries<S> out(a.horizon().is_unbounded() ? Horizon::unbounded()
                                             : a.horizon().shifted(d.re()));
  for (const auto& [e, c] : a.terms()) out.add_term(e + d, c);
  return out;
}

inline mpfr_prec_t series_prec(const GaussianRational&) { return 64; }
inline mpfr_prec_t series_prec(const BigComplex& c) { return c.prec(); }

// Euler operator delta = z d/dz: delta(c z^s) = s c z^s. Horizon-preserving.
template <class S>
GPSeries<S> series_delta(const GPSeries<S>& a) {
  GPSeries<S> out(a.horizon());
  for (const auto& [e, c] : a.terms()) {
    S mult = make_scalar<S>(e.v, std::max<mpfr_prec_t>(64, series_prec(c)));
    out.add_term(e, mult * c);
  }
  return out;
}

template <class S>
GPSeries<S> truncate(const GPSeries<S>& a, const Rational& bound) {
  GPSeries<S> out(min(a.horizon(), Horizon::at(bound)));
  for (const auto& [e, c] : a.terms()) out.add_term(e, c);
  return out;
}

template <class S>
GPSeries<S> convert_series(const ExactSeries& a, mpfr_prec_t prec) {
  GPSeries<S> out(a.horizon());
  for (const auto& [e, c] : a.terms()) out.add_term(e, make_scalar<S>(c, prec));
  return out;
}

// Jet of a candidate solution: components (phi, delta phi, ..., delta^m phi).
template <class S>
struct Jet {
  std::vector<GPSeries<S>> comps;

  unsigned order() const { return static_cast<unsigned>(comps.size()) - 1; }
  const GPSeries<S>& operator[](std::size_t i) const { return comps[i]; }
};

template <class S>
Jet<S> make_jet(const GPSeries<S>& phi, unsigned m) {
  Jet<S> j;
  j.comps.reserve(m + 1);
  j.comps.push_back(phi);
  for (unsigned i = 1; i <= m; ++i) j.comps.push_back(series_delta(j.comps.back()));
  return j;
}

}  // namespace gevrey
