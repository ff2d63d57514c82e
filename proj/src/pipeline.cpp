#include "gevrey/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gevrey/json_io.hpp"

namespace gevrey {

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::InvalidInput, "cannot read file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Analysis shared by both backends: linearization, polygon, slope, and (for
// finite k) the reduction data. Failures of the mu scan are fatal only when
// the caller actually needs the reduction.
void analyze(SolveResult& out, const RunOptions& opt, bool need_reduction) {
  out.report = linearize(out.ode, out.exact);
  out.polygon = polygon_from_report(out.report);
  std::optional<Rational> slope = min_positive_slope(out.report);
  // A forced k only moves the Gevrey normalization; the reduction is shaped
  // by the actual least slope and stays on it.
  out.k = opt.forced_k ? opt.forced_k : slope;
  out.mu.reset();
  out.reduced.reset();
  if (!slope) return;
  MuOptions mo;
  mo.precision = opt.precision;
  mo.forced = opt.forced_mu;
  try {
    out.mu = choose_mu(out.report, out.exact, *slope, mo);
    out.reduced = reduce_equation(out.ode, out.exact, out.mu->mu, out.report, *slope);
  } catch (const Error& e) {
    if (need_reduction) throw;
    if (e.code() != Errc::InsufficientTerms && e.code() != Errc::NotApplicable &&
        e.code() != Errc::ConditionViolated)
      throw;
  }
}

// Re-extends exact terms (always a valid prefix) to a deeper target.
ExactSeries as_seed(const ExactSeries& phi) {
  ExactSeries out(Horizon::unbounded());
  for (const auto& [e, c] : phi.terms()) out.add_term(e, c);
  return out;
}

}  // namespace

std::string default_seed_path(const std::string& eq_path) {
  std::filesystem::path p(eq_path);
  p.replace_extension(".seed.json");
  return p.string();
}

PolyODE load_equation(const std::string& path) {
  std::istringstream in(read_text(path));
  std::string line, joined;
  while (std::getline(in, line)) {
    auto pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos || line[pos] == '#') continue;
    if (!joined.empty()) joined += ' ';
    joined += line;
  }
  return parse_equation(joined);
}

ExactSeries load_seed(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text(path));
  } catch (const Json::exception& e) {
    raise(Errc::InvalidInput, std::string("seed file is not valid JSON: ") + e.what(), path);
  }
  return seed_from_json(j);
}

const FloatSeries& SolveResult::float_view(mpfr_prec_t prec) {
  if (is_float) return approx;
  if (!converted_ready_) {
    converted_ = convert_series<BigComplex>(exact, prec);
    converted_ready_ = true;
  }
  return converted_;
}

SolveResult run_solve(const RunOptions& opt, bool need_reduction) {
  SolveResult out;
  out.ode = load_equation(opt.eq_path);
  std::string sp = opt.seed_path.empty() ? default_seed_path(opt.eq_path) : opt.seed_path;
  out.seed = load_seed(sp);

  if (!opt.float_backend) {
    auto ext = extend_solution<GaussianRational>(out.ode, out.seed, opt.horizon, opt.precision);
    out.exact = std::move(ext.phi);
    out.residual_val = ext.residual_val;
    out.steps = ext.steps;
    analyze(out, opt, need_reduction);
    return out;
  }

  // Float backend. The structure (exponents, linearization, reduction) is
  // always certified exactly on a shallow prefix; only the long coefficient
  // tail runs in floating point.
  out.is_float = true;
  Rational hs(6);
  if (!out.seed.empty()) {
    Rational deep = out.seed.terms().rbegin()->first.re() + 1;
    if (cmp(deep, hs) > 0) hs = deep;
  }
  Rational cap = cmp(opt.horizon, Rational(96)) > 0 ? opt.horizon : Rational(96);
  for (;;) {
    auto ext = extend_solution<GaussianRational>(out.ode, out.seed, hs, opt.precision);
    out.exact = std::move(ext.phi);
    out.residual_val = ext.residual_val;
    out.steps = ext.steps;
    try {
      analyze(out, opt, /*need_reduction=*/true);
      break;
    } catch (const Error& e) {
      if (e.code() == Errc::NotApplicable) {
        analyze(out, opt, /*need_reduction=*/false);  // k infinite: no reduction exists
        break;
      }
      if (e.code() != Errc::InsufficientTerms || cmp(hs, cap) >= 0) throw;
      hs = hs * 2;
      if (cmp(hs, cap) > 0) hs = cap;
    }
  }

  if (!out.k || !out.reduced) {
    // Infinite k (or a forced k with no usable reduction): the grid engine
    // does not apply; run the exact engine to full depth and convert.
    auto ext = extend_solution<GaussianRational>(out.ode, as_seed(out.exact), opt.horizon,
                                                 opt.precision);
    out.exact = std::move(ext.phi);
    out.residual_val = ext.residual_val;
    out.steps = ext.steps;
    analyze(out, opt, false);
    out.approx = convert_series<BigComplex>(out.exact, opt.precision);
    return out;
  }

  const ReducedEquation& red = *out.reduced;
  FloatSeries approx(Horizon::at(opt.horizon));
  {
    // phi_mu: the first mu+1 certified terms.
    ExactSeries prefix(Horizon::unbounded());
    unsigned idx = 0;
    for (const auto& [e, c] : out.exact.terms()) {
      if (idx > out.mu->mu) break;
      prefix.add_term(e, c);
      ++idx;
    }
    FloatSeries fprefix = convert_series<BigComplex>(prefix, opt.precision);
    for (const auto& [e, c] : fprefix.terms()) approx.add_term(e, c);
  }
  Rational vt = opt.horizon - red.s_mu.re();
  unsigned tail_steps = 0;
  if (sign(vt) > 0) {
    std::vector<Exponent> gens = semigroup_generators(red);
    if (!gens.empty()) {
      SemigroupBasis sb = independent_basis(std::move(gens));
      std::vector<Exponent> schedule = grid_schedule(sb, vt);
      FloatSeries psi = reduced_extend<BigComplex>(red, vt, opt.precision, &schedule);
      tail_steps = static_cast<unsigned>(psi.size());
      for (const auto& [g, c] : psi.terms()) approx.add_term(Exponent(g.v + red.s_mu.v), c);
    }
  }
  out.approx = std::move(approx);
  out.steps = tail_steps;
  out.residual_val.reset();
  return out;
}

namespace {

// Tail of the normalized series relative to s_base, as (gamma, d) pairs with
// Re gamma > 0. Grid diagnostics only see this part.
std::vector<std::pair<Exponent, BigComplex>> normalized_tail(
    const std::vector<NormalizedTerm>& terms, const Exponent& s_base) {
  std::vector<std::pair<Exponent, BigComplex>> tail;
  for (const auto& t : terms) {
    Exponent g = t.s - s_base;
    if (sign(g.re()) > 0) tail.emplace_back(g, t.d);
  }
  return tail;
}

}  // namespace

BorelResult run_borel(const RunOptions& opt) {
  BorelResult out;
  out.solve = run_solve(opt, false);
  SolveResult& sol = out.solve;
  const FloatSeries& fs = sol.float_view(opt.precision);
  out.terms = borel_normalize(fs, sol.k, opt.precision);
  out.diag.k = sol.k;
  out.diag.radius = radius_estimate(out.terms);
  out.diag.growth = growth_fit(out.terms);

  std::optional<Exponent> s_base;
  if (sol.reduced)
    s_base = sol.reduced->s_mu;
  else if (!fs.empty())
    s_base = fs.valuation();
  if (!s_base) return out;
  auto tail = normalized_tail(out.terms, *s_base);
  if (tail.empty()) return out;

  // Prefer the reduced equation's generators (they name the semigroup the
  // theory works in); fall back to the observed tail exponents when the
  // reduction is unavailable or does not cover the tail.
  SemigroupBasis sb;
  bool have_basis = false;
  if (sol.reduced) {
    try {
      sb = independent_basis(semigroup_generators(*sol.reduced));
      for (const auto& [g, c] : tail) (void)grid_index(sb, g);
      have_basis = true;
    } catch (const Error&) {
      have_basis = false;
    }
  }
  if (!have_basis) {
    std::vector<Exponent> gens;
    gens.reserve(tail.size());
    for (const auto& [g, c] : tail) gens.push_back(g);
    sb = independent_basis(std::move(gens));
  }

  TaylorGrid<BigComplex> grid;
  grid.basis = sb;
  grid.horizon = fs.horizon();
  long d0 = 0, d1 = 0;
  for (const auto& [g, c] : tail) {
    GridIndex n = grid_index(sb, g);
    grid.coeffs.emplace(n, c);
    d0 = std::max(d0, n[0] + 1);
    d1 = std::max(d1, n[1] + 1);
  }
  out.diag.basis = sb;
  out.diag.grid_dims = {d0, d1};
  for (double scale : {0.125, 0.25, 0.5})
    out.diag.norms.push_back({scale, weighted_norm(grid, scale, opt.precision)});
  return out;
}

std::vector<CheckLine> run_verify(const RunOptions& opt) {
  std::vector<CheckLine> out;
  RunOptions base = opt;
  base.float_backend = false;
  SolveResult sol = run_solve(base, false);

  auto check = [&](const std::string& name, auto&& fn) {
    CheckLine line;
    line.name = name;
    try {
      auto [ok, detail] = fn();
      line.ok = ok;
      line.detail = std::move(detail);
    } catch (const Error& e) {
      line.ok = false;
      line.detail = std::string("error: ") + e.what();
    }
    out.push_back(std::move(line));
  };
  using R = std::pair<bool, std::string>;

  check("parse-roundtrip", [&]() -> R {
    std::string txt = pretty_print(sol.ode);
    PolyODE back = parse_equation(txt, static_cast<int>(sol.ode.order()));
    bool ok = pretty_print(back) == txt;
    return {ok, ok ? txt : "reprint differs from \"" + txt + "\""};
  });

  check("seed-prefix", [&]() -> R {
    SeedVerdict v = validate_seed(sol.ode, sol.seed);
    if (v.already_solution) return {true, "seed is already an exact solution"};
    if (!v.valid) return {false, v.reason};
    return {true, "next exponent " + v.next_exponent->str()};
  });

  check("residual-beyond-horizon", [&]() -> R {
    if (!sol.residual_val) return {true, "residual exactly zero"};
    Exponent next = *sol.residual_val - sol.report.lambda;
    bool ok = cmp(next.re(), opt.horizon) > 0;
    return {ok, "next correction at " + next.str() + ", horizon " + rational_str(opt.horizon)};
  });

  check("linearization-stable", [&]() -> R {
    return {sol.report.stable, "half-horizon recomputation " +
                                   std::string(sol.report.stable ? "matches" : "differs")};
  });

  check("slope-consistency", [&]() -> R {
    auto slope = min_positive_slope(sol.report);  // cross-checks the polygon internally
    bool same = (slope.has_value() == sol.polygon.k.has_value()) &&
                (!slope || cmp(*slope, *sol.polygon.k) == 0);
    std::string txt = slope ? rational_str(*slope) : "inf";
    if (opt.forced_k) txt += " (forced to " + rational_str(*opt.forced_k) + ")";
    return {same, "k = " + txt};
  });

  check("dual-engine", [&]() -> R {
    if (!sol.k) return {true, "skipped: k infinite, both backends share the exact engine"};
    RunOptions fo = opt;
    fo.float_backend = true;
    SolveResult fsol = run_solve(fo, true);
    FloatSeries ex = convert_series<BigComplex>(sol.exact, opt.precision);
    double tol = std::ldexp(1.0, -static_cast<int>(opt.precision) / 2);
    double worst = 0.0;
    auto measure = [&](const FloatSeries& a, const FloatSeries& b) {
      for (const auto& [e, c] : a.terms()) {
        auto o = b.coeff(e);
        BigComplex diff = o ? c - *o : c;
        worst = std::max(worst, abs(diff).to_double());
      }
    };
    measure(ex, fsol.approx);
    measure(fsol.approx, ex);
    std::ostringstream ss;
    ss << "max coefficient gap " << worst << " (tol " << tol << ")";
    return {worst <= tol, ss.str()};
  });

  check("sigma-delta", [&]() -> R {
    std::optional<Exponent> s_base;
    if (sol.reduced)
      s_base = sol.reduced->s_mu;
    else if (!sol.exact.empty())
      s_base = sol.exact.valuation();
    if (!s_base) return {true, "skipped: empty solution"};
    ExactSeries tail;
    for (const auto& [e, c] : sol.exact.terms()) {
      Exponent g = e - *s_base;
      if (sign(g.re()) > 0) tail.add_term(g, c);
    }
    if (tail.empty()) return {true, "skipped: no tail terms"};
    std::vector<Exponent> gens;
    for (const auto& [g, c] : tail.terms()) gens.push_back(g);
    SemigroupBasis sb = independent_basis(std::move(gens));
    auto lhs = sigma_map(series_delta(tail), sb);
    auto rhs = delta_on_grid(sigma_map(tail, sb));
    bool ok = lhs.coeffs == rhs.coeffs;
    return {ok, "sigma(delta x) == Delta(sigma x) on " + std::to_string(tail.size()) + " terms"};
  });

  check("growth-bound-at-k", [&]() -> R {
    BorelResult br = run_borel(base);
    std::ostringstream ss;
    ss << "x-ln-x coefficient " << br.diag.growth.curve << " (se " << br.diag.growth.se_curve
       << ")";
    return {br.diag.growth.ok, ss.str()};
  });

  check("falsify-at-2k", [&]() -> R {
    if (!sol.k) return {true, "skipped: k infinite"};
    RunOptions f2 = base;
    f2.forced_k = *sol.k * 2;
    BorelResult br = run_borel(f2);
    std::ostringstream ss;
    ss << "x-ln-x coefficient at 2k " << br.diag.growth.curve << "; bound "
       << (br.diag.growth.ok ? "unexpectedly holds" : "fails as it must");
    return {!br.diag.growth.ok, ss.str()};
  });

  return out;
}

}  // namespace gevrey
