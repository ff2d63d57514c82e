#include "gevrey/ode.hpp"

#include <algorithm>

namespace gevrey {

namespace {

unsigned q_at(const std::vector<unsigned>& q, std::size_t i) { return i < q.size() ? q[i] : 0; }

// Canonical monomial order: higher-derivative content first (compare the
// exponent vector from the top index down), then by z-power.
bool mono_less(const OdeMonomial& a, const OdeMonomial& b) {
  std::size_t n = std::max(a.q.size(), b.q.size());
  for (std::size_t j = n; j-- > 0;) {
    unsigned qa = q_at(a.q, j), qb = q_at(b.q, j);
    if (qa != qb) return qa > qb;
  }
  return cmp(a.beta, b.beta) < 0;
}

bool mono_same_key(const OdeMonomial& a, const OdeMonomial& b) {
  std::size_t n = std::max(a.q.size(), b.q.size());
  for (std::size_t j = 0; j < n; ++j)
    if (q_at(a.q, j) != q_at(b.q, j)) return false;
  return cmp(a.beta, b.beta) == 0;
}

void trim(OdeMonomial& m) {
  while (!m.q.empty() && m.q.back() == 0) m.q.pop_back();
}

}  // namespace

PolyVal poly_canonical(PolyVal a) {
  for (OdeMonomial& m : a) trim(m);
  std::sort(a.begin(), a.end(), mono_less);
  PolyVal out;
  for (OdeMonomial& m : a) {
    if (!out.empty() && mono_same_key(out.back(), m)) {
      out.back().coeff += m.coeff;
      if (out.back().coeff.is_zero()) out.pop_back();
    } else if (!m.coeff.is_zero()) {
      out.push_back(std::move(m));
    }
  }
  return out;
}

PolyVal poly_add(const PolyVal& a, const PolyVal& b) {
  PolyVal out = a;
  out.insert(out.end(), b.begin(), b.end());
  return poly_canonical(std::move(out));
}

PolyVal poly_neg(const PolyVal& a) {
  PolyVal out = a;
  for (OdeMonomial& m : out) m.coeff = -m.coeff;
  return out;
}

PolyVal poly_mul(const PolyVal& a, const PolyVal& b) {
  PolyVal out;
  out.reserve(a.size() * b.size());
  for (const OdeMonomial& x : a) {
    for (const OdeMonomial& y : b) {
      OdeMonomial m;
      m.coeff = x.coeff * y.coeff;
      m.beta = x.beta + y.beta;
      m.q.resize(std::max(x.q.size(), y.q.size()));
      for (std::size_t j = 0; j < m.q.size(); ++j) m.q[j] = q_at(x.q, j) + q_at(y.q, j);
      out.push_back(std::move(m));
    }
  }
  return poly_canonical(std::move(out));
}

PolyVal poly_pow(const PolyVal& a, unsigned e) {
  PolyVal acc = {OdeMonomial{GaussianRational::from_long(1), Rational(0), {}}};
  for (unsigned j = 0; j < e; ++j) acc = poly_mul(acc, a);
  return acc;
}

PolyODE::PolyODE(unsigned order, std::vector<OdeMonomial> monomials) : order_(order) {
  monos_ = poly_canonical(std::move(monomials));
  for (const OdeMonomial& m : monos_) {
    if (sgn(m.beta) < 0) raise(Errc::NonPolynomial, "negative power of z in equation");
    if (m.q.size() > order_ + 1)
      raise(Errc::IndexOutOfRange, "monomial uses a derivative beyond the declared order");
  }
}

unsigned PolyODE::degree_in(unsigned i) const {
  unsigned d = 0;
  for (const OdeMonomial& m : monos_) d = std::max(d, q_at(m.q, i));
  return d;
}

unsigned PolyODE::total_degree() const {
  unsigned d = 0;
  for (const OdeMonomial& m : monos_) d = std::max(d, m.total_degree());
  return d;
}

bool PolyODE::has_fractional_beta() const {
  for (const OdeMonomial& m : monos_)
    if (m.beta.get_den() != 1) return true;
  return false;
}

PolyODE partial_derivative(const PolyODE& f, unsigned i) {
  if (i > f.order()) raise(Errc::IndexOutOfRange, "partial derivative index exceeds the order");
  PolyVal out;
  for (const OdeMonomial& m : f.monomials()) {
    unsigned qi = q_at(m.q, i);
    if (qi == 0) continue;
    OdeMonomial d = m;
    d.coeff *= GaussianRational::from_long(static_cast<long>(qi));
    d.q[i] = qi - 1;
    out.push_back(std::move(d));
  }
  return PolyODE(f.order(), std::move(out));
}

namespace {

std::string power_text(const Rational& beta) {
  if (beta.get_den() == 1) return rational_str(beta);
  return "(" + rational_str(beta) + ")";
}

// A coefficient literal the grammar can read back: reals plain, complex
// values parenthesized with an explicit '*' before i.
std::string coeff_text(const GaussianRational& c) {
  if (c.is_real()) return rational_str(c.re);
  std::string im;
  if (cmp(c.im, 1) == 0)
    im = "i";
  else if (cmp(c.im, -1) == 0)
    im = "-i";
  else
    im = rational_str(c.im) + "*i";
  if (sgn(c.re) == 0) return "(" + im + ")";
  if (im[0] == '-') return "(" + rational_str(c.re) + im + ")";
  return "(" + rational_str(c.re) + "+" + im + ")";
}

}  // namespace

std::string pretty_print(const PolyODE& f) {
  if (f.monomials().empty()) return "0";
  std::string out;
  bool first = true;
  for (const OdeMonomial& m : f.monomials()) {
    std::vector<std::string> factors;
    if (sgn(m.beta) > 0) factors.push_back(cmp(m.beta, 1) == 0 ? "z" : "z^" + power_text(m.beta));
    for (std::size_t i = 0; i < m.q.size(); ++i) {
      if (m.q[i] == 0) continue;
      std::string v = (i == 0) ? "u" : "D(u," + std::to_string(i) + ")";
      if (m.q[i] > 1) v += "^" + std::to_string(m.q[i]);
      factors.push_back(std::move(v));
    }
    GaussianRational c = m.coeff;
    std::string sign;
    if (c.is_real() && sgn(c.re) < 0) {
      sign = "-";
      c = -c;
    }
    std::string body;
    bool unit = c.is_real() && cmp(c.re, 1) == 0;
    if (!unit || factors.empty()) body = coeff_text(c);
    for (const std::string& fct : factors) {
      if (!body.empty()) body += "*";
      body += fct;
    }
    if (first) {
      out = sign + body;
      first = false;
    } else {
      out += (sign == "-") ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace gevrey
