#pragma once

#include <optional>
#include <vector>

#include "gevrey/ode.hpp"

namespace gevrey {

// Leading data of dF/du_i evaluated along phi, shaped as
// A_i z^lambda + B_i z^{lambda_i} + ... with Re lambda_i > Re lambda.
struct LinearizationRow {
  GPSeries<GaussianRational> series;          // full certified series
  GaussianRational a;                          // coefficient at lambda (may be 0)
  std::optional<Exponent> val;                 // least exponent, when nonempty
  std::optional<Exponent> sub_exponent;        // least exponent != lambda
  std::optional<GaussianRational> sub_coeff;
};

struct LinearizationReport {
  Exponent lambda;                 // common valuation of the nonzero rows
  unsigned p = 0;                  // largest i with A_i != 0
  std::vector<LinearizationRow> rows;  // size order+1
  bool stable = false;             // half-horizon recomputation matched
};

// Linearizes F along phi: evaluates every dF/du_i on the jet of phi, extracts
// lambda = min valuation, the coefficients A_i at lambda and the subleading
// data. Fails if the hypothesis shape cannot be certified.
LinearizationReport linearize(const PolyODE& f, const ExactSeries& phi);

struct PolygonPoint {
  unsigned i;
  Rational y;  // Re of the row valuation
};

struct PolygonEdge {
  std::size_t from;  // vertex indices
  std::size_t to;
  Rational slope;
};

// Newton polygon of the linearized operator: lower-left boundary of the
// point set + positive quadrant. k is the least positive boundary slope;
// absent k means the minimum of y is attained at the largest i (k infinite).
struct NewtonPolygon {
  std::vector<PolygonPoint> points;     // input, sorted by i
  std::vector<PolygonPoint> vertices;   // lower hull, left to right
  std::vector<PolygonEdge> edges;
  std::vector<Rational> positive_slopes;
  std::optional<Rational> k;
  std::vector<unsigned> missing_rows;   // rows with no certified terms
};

NewtonPolygon newton_polygon(std::vector<PolygonPoint> pts);

// Polygon from a linearization report (empty rows become warnings).
NewtonPolygon polygon_from_report(const LinearizationReport& rep);

// k by the direct valuation formula min_{i>p} (Re lambda_i - Re lambda)/(i-p),
// cross-checked against the polygon; Errc::Inconsistent if they disagree.
std::optional<Rational> min_positive_slope(const LinearizationReport& rep);

}  // namespace gevrey
