#include "gevrey/json_io.hpp"

#include <cmath>

namespace gevrey {

namespace {

// Doubles go through nlohmann's shortest-round-trip printer, which is
// deterministic; non-finite values have no JSON encoding, so flag them.
Json finite_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

Json complex_json(const BigComplex& z, int digits) {
  return Json{{"re", z.re().str(digits)}, {"im", z.im().str(digits)}};
}

}  // namespace

Json rational_json(const Rational& r) { return rational_str(r); }

Json gauss_json(const GaussianRational& g) {
  return Json{{"re", rational_str(g.re)}, {"im", rational_str(g.im)}};
}

Json exponent_json(const Exponent& e) { return gauss_json(e.v); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (!j.is_string()) raise(Errc::InvalidInput, "expected a rational as a string or integer");
  auto r = parse_rational(j.get<std::string>());
  if (!r) raise(Errc::InvalidInput, "malformed rational \"" + j.get<std::string>() + "\"");
  return *r;
}

GaussianRational gauss_from_json(const Json& j) {
  if (j.is_string() || j.is_number_integer()) return GaussianRational(rational_from_json(j));
  if (!j.is_object()) raise(Errc::InvalidInput, "expected {\"re\", \"im\"} or a rational");
  GaussianRational g;
  if (j.contains("re")) g.re = rational_from_json(j.at("re"));
  if (j.contains("im")) g.im = rational_from_json(j.at("im"));
  return g;
}

Json series_json(const ExactSeries& s) {
  Json terms = Json::array();
  for (const auto& [e, c] : s.terms())
    terms.push_back(Json{{"s", exponent_json(e)}, {"c", gauss_json(c)}});
  return Json{{"terms", std::move(terms)}, {"horizon", s.horizon().str()}};
}

Json series_json(const FloatSeries& s, int digits) {
  Json terms = Json::array();
  for (const auto& [e, c] : s.terms())
    terms.push_back(Json{{"s", exponent_json(e)}, {"c", complex_json(c, digits)}});
  return Json{{"terms", std::move(terms)}, {"horizon", s.horizon().str()}};
}

ExactSeries seed_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
    raise(Errc::InvalidInput, "seed file must be an object with a \"terms\" array");
  ExactSeries out(Horizon::unbounded());
  for (const auto& t : j.at("terms")) {
    if (!t.is_object() || !t.contains("s") || !t.contains("c"))
      raise(Errc::InvalidInput, "seed term must carry \"s\" and \"c\"");
    out.add_term(Exponent(gauss_from_json(t.at("s"))), gauss_from_json(t.at("c")));
  }
  return out;
}

Json ode_json(const PolyODE& f) {
  Json monos = Json::array();
  for (const auto& mono : f.monomials()) {
    Json q = Json::array();
    for (unsigned i = 0; i <= f.order(); ++i)
      q.push_back(i < mono.q.size() ? mono.q[i] : 0u);
    monos.push_back(Json{{"coeff", gauss_json(mono.coeff)},
                         {"beta", rational_json(mono.beta)},
                         {"q", std::move(q)}});
  }
  return Json{{"m", f.order()},
              {"monomials", std::move(monos)},
              {"extended_beta", f.has_fractional_beta()},
              {"text", pretty_print(f)}};
}

Json report_json(const LinearizationReport& rep) {
  Json rows = Json::array();
  for (unsigned i = 0; i < rep.rows.size(); ++i) {
    const auto& row = rep.rows[i];
    Json r{{"i", i}, {"a", gauss_json(row.a)}};
    r["val"] = row.val ? exponent_json(*row.val) : Json(nullptr);
    if (row.sub_exponent)
      r["sub"] = Json{{"s", exponent_json(*row.sub_exponent)}, {"c", gauss_json(*row.sub_coeff)}};
    else
      r["sub"] = nullptr;
    rows.push_back(std::move(r));
  }
  return Json{{"lambda", exponent_json(rep.lambda)},
              {"p", rep.p},
              {"stable", rep.stable},
              {"rows", std::move(rows)}};
}

Json polygon_json(const NewtonPolygon& poly) {
  Json points = Json::array();
  for (const auto& pt : poly.points)
    points.push_back(Json{{"i", pt.i}, {"y", rational_json(pt.y)}});
  Json vertices = Json::array();
  for (const auto& pt : poly.vertices)
    vertices.push_back(Json{{"i", pt.i}, {"y", rational_json(pt.y)}});
  Json edges = Json::array();
  for (const auto& e : poly.edges)
    edges.push_back(Json{{"from", e.from}, {"to", e.to}, {"slope", rational_json(e.slope)}});
  Json slopes = Json::array();
  for (const auto& s : poly.positive_slopes) slopes.push_back(rational_json(s));
  return Json{{"points", std::move(points)},
              {"vertices", std::move(vertices)},
              {"edges", std::move(edges)},
              {"positive_slopes", std::move(slopes)},
              {"k", poly.k ? Json(rational_str(*poly.k)) : Json("inf")},
              {"missing_rows", poly.missing_rows}};
}

Json mu_json(const MuChoice& mu) {
  Json roots = Json::array();
  for (const auto& [re, im] : mu.roots) roots.push_back(Json{{"re", re}, {"im", im}});
  auto conds = [](const MuConditions& c) {
    return Json{{"roots_clear", c.roots_clear},
                {"re_increases", c.re_increases},
                {"deep_enough", c.deep_enough}};
  };
  Json out{{"mu", mu.mu},
           {"s_mu", exponent_json(mu.s_mu)},
           {"roots", std::move(roots)},
           {"min_margin", finite_or_null(mu.min_margin)},
           {"conditions", conds(mu.conditions)}};
  out["prev_failure"] = mu.prev_failure ? conds(*mu.prev_failure) : Json(nullptr);
  return out;
}

Json reduced_json(const ReducedEquation& red) {
  Json a = Json::array();
  for (const auto& c : red.a) a.push_back(gauss_json(c));
  Json lp = Json::array();
  for (const auto& t : red.lprime)
    lp.push_back(Json{{"coeff", gauss_json(t.coeff)},
                      {"alpha", exponent_json(t.alpha)},
                      {"i", t.i}});
  Json nt = Json::array();
  for (const auto& t : red.nterms)
    nt.push_back(Json{{"coeff", gauss_json(t.coeff)},
                      {"beta", exponent_json(t.beta)},
                      {"q", t.q}});
  return Json{{"mu", red.mu},
              {"s_mu", exponent_json(red.s_mu)},
              {"lambda", exponent_json(red.lambda)},
              {"p", red.p},
              {"m", red.order},
              {"k", rational_json(red.k)},
              {"nu", rational_json(red.nu)},
              {"L", std::move(a)},
              {"Lprime", std::move(lp)},
              {"N", std::move(nt)}};
}

Json basis_json(const SemigroupBasis& basis) {
  Json gens = Json::array();
  for (const auto& g : basis.generators) gens.push_back(exponent_json(g));
  Json rho = Json::array();
  for (const auto& b : basis.basis) rho.push_back(exponent_json(b));
  Json exp = Json::array();
  for (const auto& e : basis.expansion) exp.push_back(Json{e[0], e[1]});
  return Json{{"generators", std::move(gens)},
              {"basis", std::move(rho)},
              {"tau", basis.tau},
              {"expansion", std::move(exp)}};
}

Json diagnostics_json(const GevreyDiagnostics& d) {
  Json radius{{"estimate", finite_or_null(d.radius.estimate)},
              {"lower", finite_or_null(d.radius.lower)},
              {"upper", finite_or_null(d.radius.upper)},
              {"confidence", finite_or_null(d.radius.confidence)},
              {"tail_root", finite_or_null(d.radius.tail_root)},
              {"unbounded", d.radius.unbounded}};
  Json growth{{"log_A", finite_or_null(d.growth.log_a)},
              {"log_B", finite_or_null(d.growth.log_b)},
              {"A", finite_or_null(std::exp(d.growth.log_a))},
              {"B", finite_or_null(std::exp(d.growth.log_b))},
              {"max_margin", finite_or_null(d.growth.max_margin)},
              {"slope_first", finite_or_null(d.growth.slope_first)},
              {"slope_second", finite_or_null(d.growth.slope_second)},
              {"curve", finite_or_null(d.growth.curve)},
              {"se_curve", finite_or_null(d.growth.se_curve)},
              {"noise", finite_or_null(d.growth.noise)},
              {"ok", d.growth.ok}};
  Json norms = Json::array();
  for (const auto& s : d.norms)
    norms.push_back(Json{{"scale", s.scale}, {"value", finite_or_null(s.value)}});
  return Json{{"k", d.k ? Json(rational_str(*d.k)) : Json("inf")},
              {"semigroup", basis_json(d.basis)},
              {"grid_dims", Json{d.grid_dims[0], d.grid_dims[1]}},
              {"radius", std::move(radius)},
              {"growth", std::move(growth)},
              {"norms", std::move(norms)}};
}

Json error_json(const Error& e) {
  return Json{{"code", errc_name(e.code())},
              {"message", e.what()},
              {"context", e.context()}};
}

}  // namespace gevrey
