#pragma once

#include <json.hpp>

#include "gevrey/diagnostics.hpp"

namespace gevrey {

// Insertion-ordered JSON keeps every artifact byte-deterministic.
using Json = nlohmann::ordered_json;

Json rational_json(const Rational& r);
Json gauss_json(const GaussianRational& g);
Json exponent_json(const Exponent& e);

GaussianRational gauss_from_json(const Json& j);
Rational rational_from_json(const Json& j);

Json series_json(const ExactSeries& s);
Json series_json(const FloatSeries& s, int digits);

// Seed files: {"terms": [{"s": {...}, "c": {...}}, ...]}.
ExactSeries seed_from_json(const Json& j);

Json ode_json(const PolyODE& f);
Json report_json(const LinearizationReport& rep);
Json polygon_json(const NewtonPolygon& poly);
Json mu_json(const MuChoice& mu);
Json reduced_json(const ReducedEquation& red);
Json basis_json(const SemigroupBasis& basis);
Json diagnostics_json(const GevreyDiagnostics& d);

// The stderr envelope: {"code", "message", "context"}.
Json error_json(const Error& e);

}  // namespace gevrey
