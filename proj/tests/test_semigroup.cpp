#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "gevrey/semigroup.hpp"
#include "test_util.hpp"

using namespace gevrey;
using testutil::rand_gauss;
using testutil::rand_positive_rational;
using testutil::rand_rational;

namespace {

Exponent gx(long re_num, long re_den, long im_num = 0, long im_den = 1) {
  Rational re(re_num, re_den), im(im_num, im_den);
  re.canonicalize();
  im.canonicalize();
  return Exponent(std::move(re), std::move(im));
}

// expansion coefficients recombine to the generator, exactly
void check_expansion(const SemigroupBasis& b) {
  REQUIRE(b.expansion.size() == b.generators.size());
  for (std::size_t i = 0; i < b.generators.size(); ++i) {
    GaussianRational acc;
    for (unsigned j = 0; j < b.tau; ++j) {
      CHECK(b.expansion[i][j] >= 0);
      acc += b.basis[j].v * GaussianRational(Rational(b.expansion[i][j]));
    }
    CHECK(acc == b.generators[i].v);
    GridIndex idx = grid_index(b, b.generators[i]);
    CHECK(idx == b.expansion[i]);
  }
}

std::vector<Exponent> rand_generators(std::mt19937& rng, bool force_collinear) {
  std::uniform_int_distribution<int> nd(1, 6);
  std::vector<Exponent> gens;
  int n = nd(rng);
  if (force_collinear) {
    GaussianRational ray(rand_positive_rational(rng), rand_rational(rng));
    std::uniform_int_distribution<long> mul(1, 5);
    for (int i = 0; i < n; ++i) {
      Rational m(mul(rng), mul(rng));
      m.canonicalize();
      gens.emplace_back(GaussianRational(ray.re * m, ray.im * m));
    }
  } else {
    for (int i = 0; i < n; ++i)
      gens.emplace_back(rand_positive_rational(rng), rand_rational(rng));
  }
  return gens;
}

}  // namespace

TEST_CASE("collinear generators reduce to a single ray") {
  SemigroupBasis b = independent_basis({gx(2, 1), gx(3, 1)});
  CHECK(b.tau == 1);
  REQUIRE(b.basis.size() == 1);
  CHECK(b.basis[0] == gx(1, 1));  // gcd of 2 and 3
  REQUIRE(b.expansion.size() == 2);
  CHECK(b.expansion[0] == GridIndex{2, 0});
  CHECK(b.expansion[1] == GridIndex{3, 0});

  SemigroupBasis c = independent_basis({gx(1, 2), gx(1, 3)});
  CHECK(c.tau == 1);
  CHECK(c.basis[0] == gx(1, 6));
  CHECK(c.expansion[0] == GridIndex{2, 0});  // generators sort as 1/3 < 1/2
  CHECK(c.expansion[1] == GridIndex{3, 0});

  SemigroupBasis d = independent_basis({gx(1, 1, 1, 1), gx(3, 1, 3, 1), gx(1, 2, 1, 2)});
  CHECK(d.tau == 1);
  CHECK(d.basis[0] == gx(1, 2, 1, 2));
  check_expansion(d);
}

TEST_CASE("the mixed lattice picks the two extreme rays") {
  SemigroupBasis b = independent_basis({gx(1, 1), gx(1, 1, 1, 1), gx(1, 1, -1, 1)});
  CHECK(b.tau == 2);
  REQUIRE(b.basis.size() == 2);
  CHECK(b.basis[0] == gx(1, 2, 1, 2));    // (1+i)/2, Im >= 0 ray first
  CHECK(b.basis[1] == gx(1, 2, -1, 2));   // (1-i)/2
  // sorted generators: 1-i, 1, 1+i
  REQUIRE(b.expansion.size() == 3);
  CHECK(b.expansion[0] == GridIndex{0, 2});
  CHECK(b.expansion[1] == GridIndex{1, 1});
  CHECK(b.expansion[2] == GridIndex{2, 0});
  check_expansion(b);
}

TEST_CASE("basis rejects degenerate input") {
  CHECK_THROWS_AS(independent_basis({}), const Error&);
  try {
    independent_basis({Exponent(Rational(0), Rational(1))});
    FAIL("expected NonPositiveRealPart");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonPositiveRealPart);
  }
}

TEST_CASE("random generator sets expand exactly over their basis") {
  std::mt19937 rng(909);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int it = 0; it < 200; ++it) {
    std::vector<Exponent> gens = rand_generators(rng, coin(rng) == 1);
    SemigroupBasis b = independent_basis(gens);
    CHECK((b.tau == 1 || b.tau == 2));
    check_expansion(b);

    // redundant multiples of an existing generator change nothing
    std::vector<Exponent> extended = gens;
    extended.push_back(Exponent(gens.front().v * GaussianRational::from_long(2)));
    SemigroupBasis b2 = independent_basis(extended);
    REQUIRE(b2.tau == b.tau);
    for (unsigned j = 0; j < b.tau; ++j) CHECK(b2.basis[j] == b.basis[j]);
  }
}

TEST_CASE("grid_index inverts exponent_of") {
  std::mt19937 rng(910);
  std::uniform_int_distribution<long> nd(0, 20);
  for (int it = 0; it < 100; ++it) {
    SemigroupBasis b = independent_basis(rand_generators(rng, it % 2 == 0));
    TaylorGrid<GaussianRational> probe;
    probe.basis = b;
    for (int rep = 0; rep < 10; ++rep) {
      GridIndex n{nd(rng), b.tau == 2 ? nd(rng) : 0};
      CHECK(grid_index(b, probe.exponent_of(n)) == n);
    }
  }
}

TEST_CASE("off-grid exponents raise NotInSemigroup") {
  SemigroupBasis one = independent_basis({gx(1, 1)});
  try {
    grid_index(one, gx(1, 2));
    FAIL("expected NotInSemigroup");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotInSemigroup);
  }

  SemigroupBasis two = independent_basis({gx(1, 1, 1, 1), gx(1, 1, -1, 1)});
  CHECK(two.tau == 2);
  CHECK(grid_index(two, gx(2, 1)) == GridIndex{1, 1});
  try {
    grid_index(two, gx(1, 1));  // needs (1/2, 1/2)
    FAIL("expected NotInSemigroup");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotInSemigroup);
  }
}

TEST_CASE("grid schedule is strictly ascending and closed under addition") {
  // generators on a half-integer lattice keep the basis scale small, so the
  // enumeration stays shallow
  std::mt19937 rng(911);
  std::uniform_int_distribution<int> nd(1, 4), re2(1, 6), im1(-2, 2);
  for (int it = 0; it < 60; ++it) {
    std::vector<Exponent> gens;
    int n = nd(rng);
    for (int t = 0; t < n; ++t) {
      Rational re(re2(rng), 2);
      re.canonicalize();
      gens.emplace_back(std::move(re), Rational(im1(rng)));
    }
    SemigroupBasis b = independent_basis(gens);
    Rational bound(8);
    std::vector<Exponent> sched = grid_schedule(b, bound);
    for (std::size_t j = 1; j < sched.size(); ++j) CHECK(sched[j - 1] < sched[j]);
    for (const Exponent& e : sched) {
      CHECK(cmp(e.re(), bound) <= 0);
      CHECK(sgn(e.re()) > 0);
      grid_index(b, e);  // must not throw: every point lies on the grid
    }
    // generators below the bound are scheduled
    for (const Exponent& g : b.generators)
      if (cmp(g.re(), bound) <= 0)
        CHECK(std::find(sched.begin(), sched.end(), g) != sched.end());
    // pairwise sums below the bound are scheduled (sample to keep it cheap)
    std::size_t cap = std::min<std::size_t>(sched.size(), 25);
    for (std::size_t a = 0; a < cap; ++a)
      for (std::size_t c = a; c < cap; ++c) {
        Exponent s = sched[a] + sched[c];
        if (cmp(s.re(), bound) > 0) continue;
        CHECK(std::binary_search(sched.begin(), sched.end(), s));
      }
  }
}

TEST_CASE("sigma is a ring isomorphism intertwining delta") {
  std::mt19937 rng(912);
  SemigroupBasis b = independent_basis({gx(1, 1, 1, 1), gx(1, 1, -1, 1)});
  std::uniform_int_distribution<long> nd(0, 4);
  auto rand_grid_series = [&]() {
    ExactSeries s;
    TaylorGrid<GaussianRational> probe;
    probe.basis = b;
    int terms = static_cast<int>(nd(rng)) + 1;
    for (int t = 0; t < terms; ++t)
      s.add_term(probe.exponent_of({nd(rng), nd(rng)}), rand_gauss(rng));
    return s;
  };
  for (int it = 0; it < 150; ++it) {
    ExactSeries A = rand_grid_series(), B = rand_grid_series();

    // round trip
    CHECK(sigma_inverse(sigma_map(A, b)) == A);

    // additive and multiplicative homomorphism
    TaylorGrid<GaussianRational> sum = grid_add(sigma_map(A, b), sigma_map(B, b));
    CHECK(sigma_inverse(sum) == series_add(A, B));
    TaylorGrid<GaussianRational> prod = grid_mul(sigma_map(A, b), sigma_map(B, b));
    CHECK(sigma_inverse(prod) == series_mul(A, B));

    // Delta sigma = sigma delta
    TaylorGrid<GaussianRational> lhs = delta_on_grid(sigma_map(A, b));
    TaylorGrid<GaussianRational> rhs = sigma_map(series_delta(A), b);
    CHECK(lhs.coeffs == rhs.coeffs);
  }
}

TEST_CASE("the euler reduction generates the integer ray") {
  PolyODE f = parse_equation("z*D(u,1) + u - z");
  ExactSeries seed;
  seed.add_term(Exponent::from_long(1), GaussianRational::from_long(1));
  Extension<GaussianRational> ext = extend_solution<GaussianRational>(f, seed, Rational(8));
  ExactSeries phi = ext.phi;
  phi.set_horizon(Horizon::unbounded());
  LinearizationReport rep = linearize(f, ext.phi);
  ReducedEquation red = reduce_equation(f, phi, 2, rep, Rational(1));

  std::vector<Exponent> gens = semigroup_generators(red);
  REQUIRE(gens.size() == 1);
  CHECK(gens[0] == Exponent::from_long(1));
  SemigroupBasis b = independent_basis(gens);
  CHECK(b.tau == 1);
  CHECK(b.basis[0] == Exponent::from_long(1));
  std::vector<Exponent> sched = grid_schedule(b, Rational(5));
  REQUIRE(sched.size() == 5);
  CHECK(sched[0] == Exponent::from_long(1));
  CHECK(sched[4] == Exponent::from_long(5));
}
