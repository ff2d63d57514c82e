#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "gevrey/analysis.hpp"
#include "test_util.hpp"

using namespace gevrey;

namespace {

ExactSeries mono(long re, long im, long c_re, long c_im) {
  ExactSeries s;
  s.add_term(Exponent::from_long(re, im), GaussianRational::from_long(c_re, c_im));
  return s;
}

// Independent lower-hull oracle: gift wrapping from the leftmost point,
// always advancing to the least secant slope (farthest point on ties, so
// collinear middles are dropped). Different algorithm from the library's
// monotone chain on purpose.
std::vector<PolygonPoint> wrap_hull(std::vector<PolygonPoint> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const PolygonPoint& a, const PolygonPoint& b) { return a.i < b.i; });
  std::vector<PolygonPoint> out{pts.front()};
  std::size_t cur = 0;
  while (cur + 1 < pts.size()) {
    std::size_t best = cur + 1;
    Rational best_slope = (pts[best].y - pts[cur].y) /
                          Rational(static_cast<long>(pts[best].i - pts[cur].i));
    for (std::size_t j = cur + 2; j < pts.size(); ++j) {
      Rational slope = (pts[j].y - pts[cur].y) /
                       Rational(static_cast<long>(pts[j].i - pts[cur].i));
      int c = cmp(slope, best_slope);
      if (c < 0 || (c == 0 && pts[j].i > pts[best].i)) {
        best = j;
        best_slope = slope;
      }
    }
    out.push_back(pts[best]);
    cur = best;
  }
  return out;
}

}  // namespace

TEST_CASE("polygon fixtures") {
  NewtonPolygon p1 = newton_polygon({{0, Rational(0)}, {1, Rational(1)}});
  REQUIRE(p1.vertices.size() == 2);
  REQUIRE(p1.edges.size() == 1);
  CHECK(cmp(p1.edges[0].slope, Rational(1)) == 0);
  REQUIRE(p1.k.has_value());
  CHECK(cmp(*p1.k, Rational(1)) == 0);

  NewtonPolygon p2 = newton_polygon({{0, Rational(1)}, {1, Rational(0)}});
  CHECK(p2.positive_slopes.empty());
  CHECK_FALSE(p2.k.has_value());

  // collinear middle points are not vertices
  NewtonPolygon p3 =
      newton_polygon({{0, Rational(0)}, {1, Rational(1)}, {2, Rational(2)}});
  REQUIRE(p3.vertices.size() == 2);
  CHECK(p3.vertices[0].i == 0);
  CHECK(p3.vertices[1].i == 2);

  NewtonPolygon p4 = newton_polygon({{3, Rational(5)}});
  CHECK(p4.vertices.size() == 1);
  CHECK(p4.edges.empty());
  CHECK_FALSE(p4.k.has_value());

  CHECK_THROWS_AS(newton_polygon({}), const Error&);
  CHECK_THROWS_AS(newton_polygon({{1, Rational(0)}, {1, Rational(1)}}), const Error&);
}

TEST_CASE("polygon agrees with the gift-wrapping oracle") {
  std::mt19937 rng(20240);
  std::uniform_int_distribution<unsigned> nd(1, 8);
  std::uniform_int_distribution<unsigned> xd(0, 10);
  std::uniform_int_distribution<long> yn(-10, 10);
  std::uniform_int_distribution<long> yden(1, 4);
  for (int it = 0; it < 500; ++it) {
    std::set<unsigned> xs;
    unsigned n = nd(rng);
    while (xs.size() < n) xs.insert(xd(rng));
    std::vector<PolygonPoint> pts;
    for (unsigned x : xs) {
      Rational y(yn(rng), yden(rng));
      y.canonicalize();
      pts.push_back({x, y});
    }
    std::shuffle(pts.begin(), pts.end(), rng);

    NewtonPolygon poly = newton_polygon(pts);
    std::vector<PolygonPoint> oracle = wrap_hull(pts);
    REQUIRE(poly.vertices.size() == oracle.size());
    for (std::size_t j = 0; j < oracle.size(); ++j) {
      CHECK(poly.vertices[j].i == oracle[j].i);
      CHECK(cmp(poly.vertices[j].y, oracle[j].y) == 0);
    }

    // edge slopes strictly increase and k is the least positive one
    for (std::size_t j = 1; j < poly.edges.size(); ++j)
      CHECK(cmp(poly.edges[j - 1].slope, poly.edges[j].slope) < 0);
    std::optional<Rational> least;
    for (const PolygonEdge& e : poly.edges)
      if (sgn(e.slope) > 0 && (!least || cmp(e.slope, *least) < 0)) least = e.slope;
    CHECK(least.has_value() == poly.k.has_value());
    if (least) CHECK(cmp(*least, *poly.k) == 0);

    // every input point lies on or above the boundary
    for (const PolygonPoint& p : pts) {
      for (std::size_t j = 1; j < poly.vertices.size(); ++j) {
        const PolygonPoint& a = poly.vertices[j - 1];
        const PolygonPoint& b = poly.vertices[j];
        if (p.i < a.i || p.i > b.i) continue;
        Rational t(static_cast<long>(p.i) - static_cast<long>(a.i));
        Rational dx(static_cast<long>(b.i) - static_cast<long>(a.i));
        Rational line = a.y + (b.y - a.y) / dx * t;
        CHECK(cmp(p.y, line) >= 0);
      }
    }
  }
}

TEST_CASE("linearization of the basic fixtures") {
  ExactSeries z1 = mono(1, 0, 1, 0);

  SUBCASE("euler") {
    PolyODE f = parse_equation("z*D(u,1) + u - z");
    LinearizationReport rep = linearize(f, z1);
    CHECK(rep.lambda == Exponent::from_long(0));
    CHECK(rep.p == 0);
    CHECK(rep.stable);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].a == GaussianRational::from_long(1));
    CHECK(rep.rows[1].a == GaussianRational::from_long(0));
    REQUIRE(rep.rows[1].val.has_value());
    CHECK(*rep.rows[1].val == Exponent::from_long(1));
    REQUIRE(rep.rows[1].sub_exponent.has_value());
    CHECK(*rep.rows[1].sub_exponent == Exponent::from_long(1));
    CHECK(*rep.rows[1].sub_coeff == GaussianRational::from_long(1));

    std::optional<Rational> k = min_positive_slope(rep);
    REQUIRE(k.has_value());
    CHECK(cmp(*k, Rational(1)) == 0);
    NewtonPolygon poly = polygon_from_report(rep);
    REQUIRE(poly.k.has_value());
    CHECK(cmp(*poly.k, Rational(1)) == 0);
    CHECK(poly.missing_rows.empty());
  }

  SUBCASE("exp") {
    PolyODE f = parse_equation("D(u,1) - z*u");
    ExactSeries one = mono(0, 0, 1, 0);
    LinearizationReport rep = linearize(f, one);
    CHECK(rep.lambda == Exponent::from_long(0));
    CHECK(rep.p == 1);
    CHECK(rep.rows[1].a == GaussianRational::from_long(1));
    REQUIRE(rep.rows[0].val.has_value());
    CHECK(*rep.rows[0].val == Exponent::from_long(1));
    CHECK_FALSE(min_positive_slope(rep).has_value());
  }

  SUBCASE("complex exponents") {
    PolyODE f = parse_equation("D(u,1) - (1+i)*u - (1+i)*u^2");
    ExactSeries phi = mono(1, 1, 1, 0);  // z^(1+i)
    LinearizationReport rep = linearize(f, phi);
    CHECK(rep.lambda == Exponent::from_long(0));
    CHECK(rep.p == 1);
    CHECK(rep.rows[0].a == GaussianRational::from_long(-1, -1));
    REQUIRE(rep.rows[0].sub_exponent.has_value());
    CHECK(*rep.rows[0].sub_exponent == Exponent::from_long(1, 1));
    CHECK(*rep.rows[0].sub_coeff == GaussianRational::from_long(-2, -2));
    CHECK_FALSE(min_positive_slope(rep).has_value());
  }
}

TEST_CASE("leading tie across imaginary parts is rejected") {
  PolyODE f = parse_equation("u*D(u,1)", 1);
  ExactSeries phi;
  phi.add_term(Exponent::from_long(1, 1), GaussianRational::from_long(1));
  phi.add_term(Exponent::from_long(1, -1), GaussianRational::from_long(1));
  try {
    linearize(f, phi);
    FAIL("expected HypothesisViolated");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::HypothesisViolated);
  }
}

TEST_CASE("degenerate linearizations have specific codes") {
  ExactSeries empty;
  try {
    linearize(parse_equation("u*D(u,1)", 1), empty);
    FAIL("expected AllLeadingZero");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AllLeadingZero);
  }
  try {
    linearize(parse_equation("u + u*D(u,1)", 1), empty);
    FAIL("expected DerivativeIdenticallyZero");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DerivativeIdenticallyZero);
  }
}

TEST_CASE("leading data invisible at half horizon is unstable") {
  PolyODE f = parse_equation("u*D(u,1)", 1);
  ExactSeries phi(Horizon::at(Rational(4)));
  phi.add_term(Exponent::from_long(3), GaussianRational::from_long(1));
  try {
    linearize(f, phi);
    FAIL("expected Unstable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Unstable);
  }
}

TEST_CASE("an undetermined row blocks k only when it could hide a smaller slope") {
  // d/du1 = z^4 u^2 vanishes to the certified depth along phi = z^3 (exponent
  // 10 beyond horizon 4 + 4), so row 1 is missing either way; only the variant
  // whose certified bound undercuts the best known slope must refuse to
  // certify k.
  ExactSeries phi(Horizon::at(Rational(4)));
  phi.add_term(Exponent::from_long(3), GaussianRational::from_long(1));

  PolyODE tame = parse_equation("z^2*D(u,2) + u + z^4*u^2*D(u,1)");
  LinearizationReport rep = linearize(tame, phi);
  CHECK(rep.p == 0);
  REQUIRE_FALSE(rep.rows[1].val.has_value());
  std::optional<Rational> k = min_positive_slope(rep);
  REQUIRE(k.has_value());
  CHECK(cmp(*k, Rational(1)) == 0);
  NewtonPolygon poly = polygon_from_report(rep);
  CHECK(poly.missing_rows == std::vector<unsigned>{1});

  PolyODE steep = parse_equation("z^20*D(u,2) + u + z^4*u^2*D(u,1)");
  LinearizationReport rep2 = linearize(steep, phi);
  try {
    min_positive_slope(rep2);
    FAIL("expected Unstable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Unstable);
  }
}

TEST_CASE("linearization rows match hand-expanded partials") {
  // f = D(u,1) - u^2 along phi = z + 2 z^2: df/du0 = -2 phi, df/du1 = 1.
  PolyODE f = parse_equation("D(u,1) - u^2");
  ExactSeries phi;
  phi.add_term(Exponent::from_long(1), GaussianRational::from_long(1));
  phi.add_term(Exponent::from_long(2), GaussianRational::from_long(2));
  LinearizationReport rep = linearize(f, phi);
  CHECK(rep.lambda == Exponent::from_long(0));
  CHECK(rep.p == 1);
  const ExactSeries& r0 = rep.rows[0].series;
  CHECK(*r0.coeff(Exponent::from_long(1)) == GaussianRational::from_long(-2));
  CHECK(*r0.coeff(Exponent::from_long(2)) == GaussianRational::from_long(-4));
  CHECK(r0.size() == 2);
}
