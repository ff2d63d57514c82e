#include "gevrey/semigroup.hpp"

#include <algorithm>

namespace gevrey {

namespace {

// cross > 0 <=> a strictly below b by angle, for vectors in the open right
// half-plane.
Rational cross(const GaussianRational& a, const GaussianRational& b) {
  return a.re * b.im - a.im * b.re;
}

long to_long_checked(const Rational& r, const char* what) {
  if (r.get_den() != 1) raise(Errc::Inconsistent, std::string(what) + " is not an integer");
  if (!r.get_num().fits_slong_p())
    raise(Errc::UnboundedDenominator, std::string(what) + " exceeds the machine range");
  return r.get_num().get_si();
}

// Output order for basis rays: argument in [0, 2pi) ascending, i.e. rays with
// Im >= 0 before rays with Im < 0, each group by ascending true angle.
bool output_before(const Exponent& a, const Exponent& b) {
  int ca = sgn(a.im()) < 0 ? 1 : 0;
  int cb = sgn(b.im()) < 0 ? 1 : 0;
  if (ca != cb) return ca < cb;
  return sgn(cross(a.v, b.v)) > 0;
}

}  // namespace

std::vector<Exponent> semigroup_generators(const ReducedEquation& red) {
  std::vector<Exponent> gens;
  for (const LprimeTerm& t : red.lprime) gens.push_back(t.alpha);
  for (const NTerm& t : red.nterms) gens.push_back(t.beta);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

SemigroupBasis independent_basis(std::vector<Exponent> generators) {
  if (generators.empty()) raise(Errc::InvalidInput, "no semigroup generators");
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  for (const Exponent& g : generators)
    if (sgn(g.re()) <= 0)
      raise(Errc::NonPositiveRealPart, "generator " + g.str() + " must have Re > 0");

  SemigroupBasis out;
  out.generators = generators;

  bool collinear = true;
  for (const Exponent& g : generators)
    if (sgn(cross(generators.front().v, g.v)) != 0) {
      collinear = false;
      break;
    }

  if (collinear) {
    // Rank 1: rho = gcd of the rational multiples along the common ray.
    const GaussianRational& v = generators.front().v;
    std::vector<Rational> q;
    for (const Exponent& g : generators) q.push_back(g.re() / v.re);
    mpz_class lcm_den(1);
    for (const Rational& r : q) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), r.get_den().get_mpz_t());
    mpz_class gcd_num(0);
    for (const Rational& r : q) {
      mpz_class scaled = r.get_num() * (lcm_den / r.get_den());
      mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), scaled.get_mpz_t());
    }
    Rational g(gcd_num, lcm_den);
    g.canonicalize();
    GaussianRational rho(v.re * g, v.im * g);
    out.tau = 1;
    out.basis = {Exponent(rho)};
    for (const Rational& r : q) {
      Rational n = r / g;
      out.expansion.push_back({to_long_checked(n, "expansion coefficient"), 0});
    }
    return out;
  }

  // Rank 2: extreme rays of the cone by true angle; representatives are the
  // first sorted generator on each ray.
  auto angle_less = [](const Exponent& a, const Exponent& b) { return sgn(cross(a.v, b.v)) > 0; };
  Exponent u = generators.front(), w = generators.front();
  for (const Exponent& g : generators) {
    if (angle_less(g, u)) u = g;
    if (angle_less(w, g)) w = g;
  }

  Rational det = cross(u.v, w.v);
  std::vector<std::pair<Rational, Rational>> ab;
  mpz_class scale(1);
  for (const Exponent& g : generators) {
    Rational a = cross(g.v, w.v) / det;
    Rational b = cross(u.v, g.v) / det;
    if (sgn(a) < 0 || sgn(b) < 0)
      raise(Errc::Inconsistent, "generator outside the extreme-ray cone");
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a.get_den().get_mpz_t());
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), b.get_den().get_mpz_t());
    ab.emplace_back(std::move(a), std::move(b));
  }
  if (mpz_sizeinbase(scale.get_mpz_t(), 2) > 62)
    raise(Errc::UnboundedDenominator, "basis scaling exceeds the machine range");
  Rational inv_n(mpz_class(1), scale);
  inv_n.canonicalize();
  Exponent rho_u(GaussianRational(u.re() * inv_n, u.im() * inv_n));
  Exponent rho_w(GaussianRational(w.re() * inv_n, w.im() * inv_n));
  Rational n(scale);

  out.tau = 2;
  bool u_first = output_before(rho_u, rho_w);
  out.basis = u_first ? std::vector<Exponent>{rho_u, rho_w} : std::vector<Exponent>{rho_w, rho_u};
  for (const auto& [a, b] : ab) {
    long na = to_long_checked(a * n, "expansion coefficient");
    long nb = to_long_checked(b * n, "expansion coefficient");
    out.expansion.push_back(u_first ? GridIndex{na, nb} : GridIndex{nb, na});
  }
  return out;
}

GridIndex grid_index(const SemigroupBasis& basis, const Exponent& e) {
  if (basis.tau == 0) raise(Errc::NotInSemigroup, "empty basis");
  if (basis.tau == 1) {
    GaussianRational q = e.v / basis.basis[0].v;
    if (sgn(q.im) != 0 || q.re.get_den() != 1 || sgn(q.re) < 0)
      raise(Errc::NotInSemigroup, "exponent " + e.str() + " is not a basis multiple");
    if (!q.re.get_num().fits_slong_p()) raise(Errc::InvalidInput, "grid index too large");
    return {q.re.get_num().get_si(), 0};
  }
  const GaussianRational& r1 = basis.basis[0].v;
  const GaussianRational& r2 = basis.basis[1].v;
  Rational det = r1.re * r2.im - r1.im * r2.re;
  Rational a = (e.re() * r2.im - e.im() * r2.re) / det;
  Rational b = (r1.re * e.im() - r1.im * e.re()) / det;
  if (a.get_den() != 1 || b.get_den() != 1 || sgn(a) < 0 || sgn(b) < 0)
    raise(Errc::NotInSemigroup, "exponent " + e.str() + " has no nonnegative integer expansion");
  if (!a.get_num().fits_slong_p() || !b.get_num().fits_slong_p())
    raise(Errc::InvalidInput, "grid index too large");
  return {a.get_num().get_si(), b.get_num().get_si()};
}

std::vector<Exponent> grid_schedule(const SemigroupBasis& basis, const Rational& bound) {
  std::vector<Exponent> out;
  if (basis.tau == 0) return out;
  if (basis.tau == 1) {
    const GaussianRational& rho = basis.basis[0].v;
    for (long nidx = 1;; ++nidx) {
      Rational re = rho.re * Rational(nidx);
      if (cmp(re, bound) > 0) break;
      out.push_back(Exponent(GaussianRational(re, rho.im * Rational(nidx))));
    }
    return out;
  }
  const GaussianRational& r1 = basis.basis[0].v;
  const GaussianRational& r2 = basis.basis[1].v;
  for (long n1 = 0;; ++n1) {
    Rational re1 = r1.re * Rational(n1);
    if (cmp(re1, bound) > 0) break;
    for (long n2 = (n1 == 0 ? 1 : 0);; ++n2) {
      Rational re = re1 + r2.re * Rational(n2);
      if (cmp(re, bound) > 0) break;
      out.push_back(
          Exponent(GaussianRational(re, r1.im * Rational(n1) + r2.im * Rational(n2))));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gevrey
