#include "gevrey/analysis.hpp"

#include <algorithm>

namespace gevrey {

namespace {

// Leading data along phi, no stability pass.
LinearizationReport leading_data(const PolyODE& f, const ExactSeries& phi) {
  unsigned m = f.order();
  Jet<GaussianRational> jet = make_jet(phi, m);
  LinearizationReport rep;
  rep.rows.resize(m + 1);
  bool any = false;
  for (unsigned i = 0; i <= m; ++i) {
    LinearizationRow& row = rep.rows[i];
    row.series = substitute(partial_derivative(f, i), jet);
    if (row.series.empty()) continue;
    row.val = row.series.valuation();
    if (!any || *row.val < rep.lambda) rep.lambda = *row.val;
    any = true;
  }
  if (!any) raise(Errc::AllLeadingZero, "every dF/du_i vanishes along phi to this horizon");
  if (rep.rows[m].series.empty())
    raise(Errc::DerivativeIdenticallyZero,
          "dF/du_m vanishes along phi to this horizon; the order-m hypothesis fails");

  for (unsigned i = 0; i <= m; ++i) {
    LinearizationRow& row = rep.rows[i];
    for (const auto& [e, c] : row.series.terms()) {
      if (cmp(e.re(), rep.lambda.re()) != 0) break;  // sorted by (Re, Im)
      if (e == rep.lambda) {
        row.a = c;
      } else {
        raise(Errc::HypothesisViolated,
              "leading tie: exponent " + e.str() + " shares Re with lambda = " + rep.lambda.str());
      }
    }
    for (const auto& [e, c] : row.series.terms()) {
      if (e == rep.lambda) continue;
      row.sub_exponent = e;
      row.sub_coeff = c;
      break;
    }
  }
  for (unsigned i = 0; i <= m; ++i)
    if (!rep.rows[i].a.is_zero()) rep.p = i;
  return rep;
}

}  // namespace

LinearizationReport linearize(const PolyODE& f, const ExactSeries& phi) {
  LinearizationReport full = leading_data(f, phi);
  if (!phi.horizon().is_unbounded()) {
    // Leading data must survive recomputation with half the certified depth,
    // otherwise it may be an artifact of the truncation boundary.
    Rational half_theta = phi.horizon().theta() / 2;
    LinearizationReport half;
    try {
      half = leading_data(f, truncate(phi, half_theta));
    } catch (const Error&) {
      raise(Errc::Unstable, "leading data invisible at half horizon; extend the solution");
    }
    bool ok = half.lambda == full.lambda && half.p == full.p;
    for (unsigned i = 0; ok && i < full.rows.size(); ++i) {
      const LinearizationRow& fr = full.rows[i];
      const LinearizationRow& hr = half.rows[i];
      if (!(hr.a == fr.a)) ok = false;
      if (hr.val && fr.val) {
        if (!(*hr.val == *fr.val)) ok = false;
      } else if (hr.val && !fr.val) {
        ok = false;
      } else if (!hr.val && fr.val) {
        // Consistent only when the full valuation lies past the half horizon.
        const Horizon& hh = hr.series.horizon();
        if (hh.is_unbounded() || cmp(fr.val->re(), hh.theta()) <= 0) ok = false;
      }
    }
    if (!ok) raise(Errc::Unstable, "leading data changed between horizon and half horizon");
  }
  full.stable = true;
  return full;
}

namespace {

// cross(A,B,C) > 0 <=> slope(AB) < slope(BC) (left turn for x-ascending points).
Rational cross(const PolygonPoint& a, const PolygonPoint& b, const PolygonPoint& c) {
  Rational abx(static_cast<long>(b.i) - static_cast<long>(a.i));
  Rational acx(static_cast<long>(c.i) - static_cast<long>(a.i));
  return abx * (c.y - a.y) - (b.y - a.y) * acx;
}

}  // namespace

NewtonPolygon newton_polygon(std::vector<PolygonPoint> pts) {
  if (pts.empty()) raise(Errc::InvalidInput, "newton polygon needs at least one point");
  std::sort(pts.begin(), pts.end(), [](const PolygonPoint& a, const PolygonPoint& b) {
    return a.i < b.i;
  });
  for (std::size_t j = 1; j < pts.size(); ++j)
    if (pts[j].i == pts[j - 1].i) raise(Errc::InvalidInput, "duplicate abscissa in polygon input");

  NewtonPolygon poly;
  poly.points = pts;

  // Monotone-chain lower hull; collinear middle points are dropped.
  std::vector<PolygonPoint> hull;
  for (const PolygonPoint& p : pts) {
    while (hull.size() >= 2 && cmp(cross(hull[hull.size() - 2], hull.back(), p), 0) <= 0)
      hull.pop_back();
    hull.push_back(p);
  }
  poly.vertices = hull;

  for (std::size_t j = 1; j < hull.size(); ++j) {
    Rational dx(static_cast<long>(hull[j].i) - static_cast<long>(hull[j - 1].i));
    Rational slope = (hull[j].y - hull[j - 1].y) / dx;
    poly.edges.push_back({j - 1, j, slope});
    if (sgn(slope) > 0) poly.positive_slopes.push_back(slope);
  }
  // Boundary slopes must strictly increase; every input point must sit on or
  // above the boundary. Violations mean a hull bug, not bad input.
  for (std::size_t j = 1; j < poly.edges.size(); ++j)
    if (cmp(poly.edges[j - 1].slope, poly.edges[j].slope) >= 0)
      raise(Errc::Inconsistent, "polygon slopes fail to increase");
  for (const PolygonPoint& p : pts) {
    for (const PolygonEdge& e : poly.edges) {
      const PolygonPoint& a = poly.vertices[e.from];
      const PolygonPoint& b = poly.vertices[e.to];
      if (p.i < a.i || p.i > b.i) continue;
      if (cmp(cross(a, b, p), 0) > 0) continue;  // strictly above
      Rational dx(static_cast<long>(p.i) - static_cast<long>(a.i));
      Rational on_line = a.y + e.slope * dx;
      if (cmp(p.y, on_line) < 0) raise(Errc::Inconsistent, "input point below polygon boundary");
    }
  }

  if (!poly.positive_slopes.empty()) poly.k = poly.positive_slopes.front();
  return poly;
}

NewtonPolygon polygon_from_report(const LinearizationReport& rep) {
  std::vector<PolygonPoint> pts;
  std::vector<unsigned> missing;
  for (unsigned i = 0; i < rep.rows.size(); ++i) {
    if (rep.rows[i].val)
      pts.push_back({i, rep.rows[i].val->re()});
    else
      missing.push_back(i);
  }
  NewtonPolygon poly = newton_polygon(std::move(pts));
  poly.missing_rows = std::move(missing);
  return poly;
}

std::optional<Rational> min_positive_slope(const LinearizationReport& rep) {
  unsigned m = static_cast<unsigned>(rep.rows.size()) - 1;
  std::optional<Rational> k;
  if (rep.p < m) {
    for (unsigned i = rep.p + 1; i <= m; ++i) {
      const LinearizationRow& row = rep.rows[i];
      Rational denom(static_cast<long>(i - rep.p));
      if (row.val) {
        Rational slope = (row.val->re() - rep.lambda.re()) / denom;
        if (!k || cmp(slope, *k) < 0) k = slope;
      }
    }
    // A row with no certified terms can only hide a smaller slope if its
    // horizon is low enough; in that case k cannot be certified yet.
    for (unsigned i = rep.p + 1; i <= m; ++i) {
      const LinearizationRow& row = rep.rows[i];
      if (row.val) continue;
      if (row.series.horizon().is_unbounded()) continue;  // exactly zero row
      Rational bound = (row.series.horizon().theta() - rep.lambda.re()) /
                       Rational(static_cast<long>(i - rep.p));
      if (!k || cmp(bound, *k) <= 0)
        raise(Errc::Unstable, "row " + std::to_string(i) +
                                  " undetermined at this horizon; k cannot be certified");
    }
  }
  NewtonPolygon poly = polygon_from_report(rep);
  bool agree = (!k && !poly.k) || (k && poly.k && cmp(*k, *poly.k) == 0);
  if (!agree)
    raise(Errc::Inconsistent, "valuation formula and polygon disagree on the least positive slope");
  return k;
}

}  // namespace gevrey
