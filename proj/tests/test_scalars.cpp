#include <doctest.h>

#include <random>

#include "gevrey/bigfloat.hpp"
#include "gevrey/exponent.hpp"
#include "test_util.hpp"

using namespace gevrey;
using testutil::rand_gauss;
using testutil::rand_nonzero_gauss;
using testutil::rand_rational;

TEST_CASE("rational parsing accepts canonical and signed forms") {
  CHECK(*parse_rational("3") == Rational(3));
  CHECK(*parse_rational("-7/2") == Rational(-7, 2));
  CHECK(*parse_rational("+5") == Rational(5));
  CHECK(*parse_rational("0/5") == Rational(0));
  CHECK(*parse_rational("4/6") == Rational(2, 3));
  CHECK_FALSE(parse_rational("").has_value());
  CHECK_FALSE(parse_rational("1/0").has_value());
  CHECK_FALSE(parse_rational("1.5").has_value());
  CHECK_FALSE(parse_rational("two").has_value());
  CHECK_FALSE(parse_rational("1/-2").has_value());
  CHECK_FALSE(parse_rational("1/2/3").has_value());
}

TEST_CASE("rational_str is canonical and round-trips") {
  CHECK(rational_str(Rational(5)) == "5");
  CHECK(rational_str(Rational(-3, 4)) == "-3/4");
  CHECK(rational_str(Rational(0)) == "0");
  std::mt19937 rng(101);
  for (int i = 0; i < 500; ++i) {
    Rational r = rand_rational(rng, 1000, 999);
    auto back = parse_rational(rational_str(r));
    REQUIRE(back.has_value());
    CHECK(*back == r);
  }
}

TEST_CASE("gaussian rationals form a commutative ring") {
  std::mt19937 rng(202);
  for (int i = 0; i < 1000; ++i) {
    GaussianRational a = rand_gauss(rng), b = rand_gauss(rng), c = rand_gauss(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == GaussianRational());
    CHECK(a * GaussianRational::from_long(1) == a);
  }
}

TEST_CASE("gaussian division inverts multiplication") {
  std::mt19937 rng(303);
  for (int i = 0; i < 300; ++i) {
    GaussianRational a = rand_gauss(rng);
    GaussianRational b = rand_nonzero_gauss(rng);
    CHECK((a * b) / b == a);
  }
  GaussianRational x = GaussianRational::from_long(1, 1);
  CHECK_THROWS_AS(x / GaussianRational(), const Error&);
}

TEST_CASE("gaussian pow matches repeated multiplication") {
  std::mt19937 rng(404);
  for (int i = 0; i < 100; ++i) {
    GaussianRational a = rand_gauss(rng, 5, 3);
    GaussianRational acc = GaussianRational::from_long(1);
    for (unsigned e = 0; e <= 6; ++e) {
      CHECK(a.pow(e) == acc);
      acc *= a;
    }
  }
}

TEST_CASE("conjugate gives the norm") {
  std::mt19937 rng(505);
  for (int i = 0; i < 200; ++i) {
    GaussianRational a = rand_gauss(rng);
    GaussianRational n = a * a.conj();
    CHECK(n.im == Rational(0));
    CHECK(n.re == a.norm2());
    CHECK(sgn(n.re) >= 0);
  }
}

TEST_CASE("gaussian text forms") {
  CHECK(GaussianRational::from_long(3).str() == "3");
  CHECK(GaussianRational(Rational(-1, 2)).str() == "-1/2");
  CHECK(GaussianRational::from_long(0, 1).str() == "i");
  CHECK(GaussianRational::from_long(0, -1).str() == "-i");
  CHECK(GaussianRational::from_long(1, 2).str() == "1+2i");
  CHECK(GaussianRational::from_long(1, -1).str() == "1-i");
  CHECK(GaussianRational().str() == "0");
  CHECK(GaussianRational(Rational(0), Rational(3, 4)).str() == "3/4i");
}

TEST_CASE("exponent order is a strict total order refining Re") {
  std::mt19937 rng(606);
  auto rand_exp = [&rng]() { return Exponent(rand_gauss(rng, 6, 4)); };
  for (int i = 0; i < 500; ++i) {
    Exponent a = rand_exp(), b = rand_exp(), c = rand_exp();
    // trichotomy
    int rel = (a < b) + (b < a) + (a == b);
    CHECK(rel == 1);
    // transitivity
    if (a < b && b < c) CHECK(a < c);
    // Re dominates
    if (cmp(a.re(), b.re()) < 0) CHECK(a < b);
    if (a.re() == b.re() && cmp(a.im(), b.im()) < 0) CHECK(a < b);
  }
  CHECK(exp_cmp(Exponent::from_long(1, 5), Exponent::from_long(2, -5)) ==
        std::strong_ordering::less);
}

TEST_CASE("horizon algebra") {
  Horizon u = Horizon::unbounded();
  Horizon h3 = Horizon::at(Rational(3));
  Horizon h5 = Horizon::at(Rational(5));
  CHECK(u.is_unbounded());
  CHECK(u.admits(Rational(1000000)));
  CHECK(h3.admits(Rational(3)));
  CHECK_FALSE(h3.admits(Rational(7, 2)));
  CHECK(min(u, h5) == h5);
  CHECK(min(h3, h5) == h3);
  CHECK(min(u, u).is_unbounded());
  CHECK(h3.shifted(Rational(2)) == h5);
  CHECK(u.shifted(Rational(-17)).is_unbounded());
  CHECK(u.str() == "inf");
  CHECK(Horizon::at(Rational(5, 2)).str() == "5/2");
}

TEST_CASE("bigfloat round trips rationals and formats deterministically") {
  BigFloat x = BigFloat::from_rational(Rational(3, 8), 128);
  CHECK(x.to_double() == 0.375);  // exactly representable
  CHECK(x.str(10) == BigFloat::from_rational(Rational(3, 8), 128).str(10));
  CHECK(BigFloat::from_long(42, 64).is_integer());
  CHECK_FALSE(BigFloat::from_rational(Rational(1, 3), 64).is_integer());
  CHECK(BigFloat::pow2(-3, 64).to_double() == 0.125);
}

TEST_CASE("bigfloat elementary functions agree with doubles") {
  std::mt19937 rng(707);
  std::uniform_real_distribution<double> d(0.1, 20.0);
  for (int i = 0; i < 100; ++i) {
    double v = d(rng);
    BigFloat x = BigFloat::from_double(v, 128);
    CHECK(log(x).to_double() == doctest::Approx(std::log(v)).epsilon(1e-12));
    CHECK(sqrt(x).to_double() == doctest::Approx(std::sqrt(v)).epsilon(1e-12));
    CHECK(exp(BigFloat::from_double(v / 10, 128)).to_double() ==
          doctest::Approx(std::exp(v / 10)).epsilon(1e-12));
  }
  CHECK(BigFloat::pi(256).to_double() == doctest::Approx(3.14159265358979312).epsilon(1e-15));
}

TEST_CASE("bigcomplex arithmetic is consistent") {
  std::mt19937 rng(808);
  for (int i = 0; i < 100; ++i) {
    BigComplex a(rand_gauss(rng), 200);
    BigComplex b(rand_nonzero_gauss(rng), 200);
    BigComplex q = (a * b) / b;
    CHECK(abs(q - a).to_double() <= 1e-50);
    BigComplex e = exp(log(b));
    CHECK(abs(e - b).to_double() <= 1e-50 * (1 + abs(b).to_double()));
  }
  BigComplex one = BigComplex::from_long(1, 0, 64);
  CHECK_THROWS_AS(one / BigComplex(64), const Error&);
}

TEST_CASE("bigcomplex pow by squaring") {
  BigComplex z(GaussianRational::from_long(1, 1), 128);  // 1 + i
  BigComplex z4 = z.pow(4);                              // (1+i)^4 = -4
  CHECK(z4.re().to_double() == doctest::Approx(-4.0).epsilon(1e-30));
  CHECK(z4.im().to_double() == doctest::Approx(0.0).scale(1).epsilon(1e-30));
}
