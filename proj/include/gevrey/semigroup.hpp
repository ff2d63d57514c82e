#pragma once

#include <array>
#include <map>
#include <vector>

#include "gevrey/solver.hpp"

namespace gevrey {

// Basis of the additive semigroup generated by finitely many exponents with
// positive real part: at most two elements (the plane caps the rank), chosen
// along the extreme rays of the generated cone and scaled so every generator
// is a nonnegative integer combination.
struct SemigroupBasis {
  std::vector<Exponent> generators;              // sorted, deduplicated input
  std::vector<Exponent> basis;                   // tau elements, canonical order
  unsigned tau = 0;
  std::vector<std::array<long, 2>> expansion;    // generators[i] = n1 rho1 + n2 rho2
};

// The finite generator set of the reduced equation's exponent semigroup:
// all L' shifts alpha and all N-term exponents beta.
std::vector<Exponent> semigroup_generators(const ReducedEquation& red);

SemigroupBasis independent_basis(std::vector<Exponent> generators);

// Every semigroup point with Re <= bound, ascending in (Re, Im) order.
// Enumerates the full integer grid over the basis (a superset of the
// semigroup, closed under the reduced recurrence).
std::vector<Exponent> grid_schedule(const SemigroupBasis& basis, const Rational& bound);

using GridIndex = std::array<long, 2>;

// A series rewritten over the semigroup basis: the exponent gamma = n1 rho1 +
// n2 rho2 becomes the multi-index (n1, n2). sigma is a ring isomorphism onto
// its image and intertwines delta with Delta = rho1 z1 d1 + rho2 z2 d2.
template <class S>
struct TaylorGrid {
  SemigroupBasis basis;
  std::map<GridIndex, S> coeffs;
  Horizon horizon;

  TaylorGrid() : horizon(Horizon::unbounded()) {}

  Exponent exponent_of(const GridIndex& n) const {
    GaussianRational g;
    for (unsigned j = 0; j < basis.tau; ++j)
      g += basis.basis[j].v * GaussianRational(Rational(n[j]));
    return Exponent(g);
  }
};

// Exact index of e over the basis, or NotInSemigroup.
GridIndex grid_index(const SemigroupBasis& basis, const Exponent& e);

template <class S>
TaylorGrid<S> sigma_map(const GPSeries<S>& series, const SemigroupBasis& basis) {
  TaylorGrid<S> out;
  out.basis = basis;
  out.horizon = series.horizon();
  for (const auto& [e, c] : series.terms()) out.coeffs.emplace(grid_index(basis, e), c);
  return out;
}

template <class S>
GPSeries<S> sigma_inverse(const TaylorGrid<S>& grid) {
  GPSeries<S> out(grid.horizon);
  for (const auto& [n, c] : grid.coeffs) out.add_term(grid.exponent_of(n), c);
  return out;
}

// Image of the Euler operator on the grid: multiply each coefficient by the
// exponent its index represents.
template <class S>
TaylorGrid<S> delta_on_grid(const TaylorGrid<S>& grid, mpfr_prec_t prec = 64) {
  TaylorGrid<S> out;
  out.basis = grid.basis;
  out.horizon = grid.horizon;
  for (const auto& [n, c] : grid.coeffs) {
    S v = c * make_scalar<S>(grid.exponent_of(n).v, prec);
    if (!v.is_zero()) out.coeffs.emplace(n, v);
  }
  return out;
}

template <class S>
TaylorGrid<S> grid_add(const TaylorGrid<S>& a, const TaylorGrid<S>& b) {
  TaylorGrid<S> out;
  out.basis = a.basis;
  out.horizon = min(a.horizon, b.horizon);
  out.coeffs = a.coeffs;
  for (const auto& [n, c] : b.coeffs) {
    auto [it, fresh] = out.coeffs.try_emplace(n, c);
    if (!fresh) {
      it->second = it->second + c;
      if (it->second.is_zero()) out.coeffs.erase(it);
    }
  }
  return out;
}

// Convolution product on indices; mirrors series multiplication through sigma.
template <class S>
TaylorGrid<S> grid_mul(const TaylorGrid<S>& a, const TaylorGrid<S>& b) {
  TaylorGrid<S> out;
  out.basis = a.basis;
  out.horizon = min(a.horizon, b.horizon);  // conservative; fine for diagnostics
  for (const auto& [na, ca] : a.coeffs) {
    for (const auto& [nb, cb] : b.coeffs) {
      GridIndex n{na[0] + nb[0], na[1] + nb[1]};
      S v = ca * cb;
      if (v.is_zero()) continue;
      auto [it, fresh] = out.coeffs.try_emplace(n, v);
      if (!fresh) {
        it->second = it->second + v;
        if (it->second.is_zero()) out.coeffs.erase(it);
      }
    }
  }
  return out;
}

}  // namespace gevrey
