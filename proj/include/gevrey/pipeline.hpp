#pragma once

#include <string>

#include "gevrey/diagnostics.hpp"
#include "gevrey/solver.hpp"

namespace gevrey {

// One bag of knobs for every subcommand; unused fields are ignored.
struct RunOptions {
  std::string eq_path;
  std::string seed_path;          // empty: <eq stem>.seed.json next to eq_path
  Rational horizon = Rational(16);
  std::optional<Rational> forced_k;    // overrides the polygon slope
  std::optional<unsigned> forced_mu;   // overrides the scan
  mpfr_prec_t precision = 256;
  bool float_backend = false;
};

std::string default_seed_path(const std::string& eq_path);
PolyODE load_equation(const std::string& path);
ExactSeries load_seed(const std::string& path);

struct SolveResult {
  PolyODE ode{1, {}};
  ExactSeries seed;
  ExactSeries exact;    // certified structural solution (full horizon on the exact path)
  FloatSeries approx;   // populated on the float path
  bool is_float = false;
  std::optional<Exponent> residual_val;
  unsigned steps = 0;
  LinearizationReport report;
  NewtonPolygon polygon;
  std::optional<Rational> k;            // effective (forced wins); absent = infinite
  std::optional<MuChoice> mu;
  std::optional<ReducedEquation> reduced;

  const FloatSeries& float_view(mpfr_prec_t prec);  // converts lazily on the exact path

 private:
  FloatSeries converted_;
  bool converted_ready_ = false;
};

// Parse + seed + extension + linearization + polygon + (for finite k) the
// mu scan and the reduction. `need_reduction` turns a missing reduction into
// an error instead of a null field.
SolveResult run_solve(const RunOptions& opt, bool need_reduction = false);

struct BorelResult {
  SolveResult solve;
  std::vector<NormalizedTerm> terms;
  GevreyDiagnostics diag;
};

BorelResult run_borel(const RunOptions& opt);

struct CheckLine {
  std::string name;
  bool ok = false;
  std::string detail;
};

// The invariant suite behind `verify`: one line per check.
std::vector<CheckLine> run_verify(const RunOptions& opt);

}  // namespace gevrey
