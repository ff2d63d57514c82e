#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "gevrey/json_io.hpp"
#include "gevrey/pipeline.hpp"
#include "gevrey/svg.hpp"

namespace gv = gevrey;

namespace {

struct Flags {
  std::string eq;
  std::string seed;
  std::string horizon = "16";
  std::string k = "auto";
  std::string mu = "auto";
  std::string backend = "exact";
  std::string json_path;
  std::string svg_path;
  long precision = 256;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--eq", f.eq, "equation file")->required();
  sub->add_option("--seed", f.seed, "seed JSON file (default: <eq stem>.seed.json)");
  sub->add_option("--horizon", f.horizon, "solve up to Re s <= this rational (default 16)");
  sub->add_option("--k", f.k, "'auto' or a positive rational overriding the polygon slope");
  sub->add_option("--mu", f.mu, "'auto' or a nonnegative integer overriding the scan");
  sub->add_option("--precision", f.precision, "working precision in bits (default 256)");
  sub->add_option("--backend", f.backend, "coefficient arithmetic (default exact)")
      ->check(CLI::IsMember({"exact", "float"}));
  sub->add_option("--json", f.json_path, "write the JSON artifact here ('-' for stdout)");
  sub->add_option("--svg", f.svg_path, "write an SVG plot here (polygon, borel)");
}

gv::RunOptions to_options(const Flags& f) {
  gv::RunOptions o;
  o.eq_path = f.eq;
  o.seed_path = f.seed;
  auto h = gv::parse_rational(f.horizon);
  if (!h || gv::sign(*h) < 0)
    gv::raise(gv::Errc::InvalidInput, "--horizon must be a nonnegative rational", f.horizon);
  o.horizon = *h;
  if (f.k != "auto") {
    auto kv = gv::parse_rational(f.k);
    if (!kv || gv::sign(*kv) <= 0)
      gv::raise(gv::Errc::InvalidInput, "--k must be 'auto' or a positive rational", f.k);
    o.forced_k = *kv;
  }
  if (f.mu != "auto") {
    if (f.mu.empty() || f.mu.size() > 6 ||
        f.mu.find_first_not_of("0123456789") != std::string::npos)
      gv::raise(gv::Errc::InvalidInput, "--mu must be 'auto' or a nonnegative integer", f.mu);
    o.forced_mu = static_cast<unsigned>(std::stoul(f.mu));
  }
  if (f.precision < 64 || f.precision > (1L << 22))
    gv::raise(gv::Errc::InvalidInput, "--precision must lie in [64, 4194304]");
  o.precision = static_cast<mpfr_prec_t>(f.precision);
  o.float_backend = (f.backend == "float");
  return o;
}

int float_digits(mpfr_prec_t prec) {
  return std::max(8, static_cast<int>(prec * 30103L / 100000L));
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) gv::raise(gv::Errc::InvalidInput, "cannot write file", path);
  out << body;
}

// JSON goes to --json (file or '-'); the human summary goes to stdout unless
// the JSON already owns stdout.
void emit(const gv::Json& j, const Flags& f, const std::string& human) {
  if (f.json_path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  if (!f.json_path.empty()) write_file(f.json_path, j.dump(2) + "\n");
  std::cout << human;
}

gv::Json solve_json(gv::SolveResult& sol, const gv::RunOptions& o) {
  gv::Json j{{"backend", sol.is_float ? "float" : "exact"},
             {"precision", static_cast<long>(o.precision)},
             {"horizon", gv::rational_str(o.horizon)},
             {"k", sol.k ? gv::Json(gv::rational_str(*sol.k)) : gv::Json("inf")},
             {"mu", sol.mu ? gv::Json(sol.mu->mu) : gv::Json(nullptr)},
             {"lambda", gv::exponent_json(sol.report.lambda)},
             {"p", sol.report.p},
             {"stable", sol.report.stable},
             {"steps", sol.steps}};
  j["residual_val"] = sol.residual_val ? gv::exponent_json(*sol.residual_val) : gv::Json(nullptr);
  j["solution"] = sol.is_float ? gv::series_json(sol.approx, float_digits(o.precision))
                               : gv::series_json(sol.exact);
  return j;
}

std::string leading_terms_text(const gv::SolveResult& sol, std::size_t limit) {
  std::ostringstream ss;
  std::size_t shown = 0;
  if (!sol.is_float) {
    for (const auto& [e, c] : sol.exact.terms()) {
      if (shown++ == limit) { ss << " + ..."; break; }
      if (shown > 1) ss << " + ";
      ss << "(" << c.str() << ") z^(" << e.str() << ")";
    }
  } else {
    for (const auto& [e, c] : sol.approx.terms()) {
      if (shown++ == limit) { ss << " + ..."; break; }
      if (shown > 1) ss << " + ";
      ss << "(" << c.re().str(6) << (c.im().sgn() < 0 ? "-" : "+")
         << abs(c.im()).str(6) << "i) z^(" << e.str() << ")";
    }
  }
  return ss.str();
}

int cmd_parse(const Flags& f) {
  gv::PolyODE ode = gv::load_equation(f.eq);
  std::ostringstream human;
  human << "order m = " << ode.order() << ", " << ode.monomials().size() << " monomials\n"
        << gv::pretty_print(ode) << "\n";
  emit(gv::ode_json(ode), f, human.str());
  return 0;
}

int cmd_solve(const Flags& f) {
  gv::RunOptions o = to_options(f);
  gv::SolveResult sol = gv::run_solve(o);
  std::size_t n = sol.is_float ? sol.approx.size() : sol.exact.size();
  std::ostringstream human;
  human << "solved to Re s <= " << gv::rational_str(o.horizon) << " (" << n << " terms, "
        << (sol.is_float ? "float" : "exact") << " backend)\n"
        << "k = " << (sol.k ? gv::rational_str(*sol.k) : "inf")
        << ", mu = " << (sol.mu ? std::to_string(sol.mu->mu) : "n/a")
        << ", lambda = " << sol.report.lambda.str() << ", p = " << sol.report.p << "\n"
        << "u = " << leading_terms_text(sol, 6) << "\n";
  emit(solve_json(sol, o), f, human.str());
  return 0;
}

int cmd_linearize(const Flags& f) {
  gv::RunOptions o = to_options(f);
  gv::SolveResult sol = gv::run_solve(o);
  gv::Json j = gv::report_json(sol.report);
  j["k"] = sol.polygon.k ? gv::Json(gv::rational_str(*sol.polygon.k)) : gv::Json("inf");
  std::ostringstream human;
  human << "lambda = " << sol.report.lambda.str() << ", p = " << sol.report.p
        << ", stable = " << (sol.report.stable ? "yes" : "no") << "\n";
  for (unsigned i = 0; i < sol.report.rows.size(); ++i) {
    const auto& row = sol.report.rows[i];
    human << "  dF/du_" << i << ": ";
    if (row.val)
      human << "val " << row.val->str() << ", A = " << row.a.str() << "\n";
    else
      human << "no certified terms\n";
  }
  emit(j, f, human.str());
  return 0;
}

int cmd_polygon(const Flags& f) {
  gv::RunOptions o = to_options(f);
  gv::SolveResult sol = gv::run_solve(o);
  if (!f.svg_path.empty()) write_file(f.svg_path, gv::polygon_svg(sol.polygon));
  std::ostringstream human;
  human << "vertices:";
  for (const auto& v : sol.polygon.vertices)
    human << " (" << v.i << ", " << gv::rational_str(v.y) << ")";
  human << "\nk = " << (sol.polygon.k ? gv::rational_str(*sol.polygon.k) : "inf") << "\n";
  emit(gv::polygon_json(sol.polygon), f, human.str());
  return 0;
}

int cmd_reduce(const Flags& f) {
  gv::RunOptions o = to_options(f);
  gv::SolveResult sol = gv::run_solve(o, /*need_reduction=*/true);
  if (!sol.k) gv::raise(gv::Errc::NotApplicable, "k is infinite; there is nothing to reduce");
  gv::Json j{{"mu", gv::mu_json(*sol.mu)}, {"reduced", gv::reduced_json(*sol.reduced)}};
  const auto& red = *sol.reduced;
  std::ostringstream human;
  human << "mu = " << red.mu << ", s_mu = " << red.s_mu.str() << ", nu = "
        << gv::rational_str(red.nu) << "\n"
        << "L has degree " << red.p << "; L' carries " << red.lprime.size()
        << " terms; N carries " << red.nterms.size() << " terms\n";
  emit(j, f, human.str());
  return 0;
}

int cmd_semigroup(const Flags& f) {
  gv::RunOptions o = to_options(f);
  gv::SolveResult sol = gv::run_solve(o, /*need_reduction=*/true);
  if (!sol.reduced)
    gv::raise(gv::Errc::NotApplicable, "k is infinite; no reduced equation, no semigroup");
  gv::SemigroupBasis sb = gv::independent_basis(gv::semigroup_generators(*sol.reduced));
  gv::Json j = gv::basis_json(sb);
  gv::Json sample = gv::Json::array();
  std::vector<gv::Exponent> sched = gv::grid_schedule(sb, gv::Rational(8));
  for (std::size_t i = 0; i < sched.size() && i < 24; ++i)
    sample.push_back(gv::exponent_json(sched[i]));
  j["schedule_sample"] = std::move(sample);
  std::ostringstream human;
  human << "tau = " << sb.tau << ", basis:";
  for (const auto& b : sb.basis) human << " " << b.str();
  human << "\n";
  emit(j, f, human.str());
  return 0;
}

int cmd_borel(const Flags& f) {
  gv::RunOptions o = to_options(f);
  gv::BorelResult br = gv::run_borel(o);
  if (!f.svg_path.empty()) write_file(f.svg_path, gv::growth_svg(br.terms, br.diag.growth));
  gv::Json j{{"diagnostics", gv::diagnostics_json(br.diag)},
             {"normalized_terms", br.terms.size()}};
  std::ostringstream human;
  human.precision(6);
  human << "k = " << (br.diag.k ? gv::rational_str(*br.diag.k) : "inf") << ", "
        << br.terms.size() << " normalized terms\n"
        << "radius estimate " << br.diag.radius.estimate << " [" << br.diag.radius.lower << ", "
        << br.diag.radius.upper << "], confidence " << br.diag.radius.confidence
        << (br.diag.radius.unbounded ? " (looks entire)" : "") << "\n"
        << "growth bound |d| <= A B^{Re s}: log A = " << br.diag.growth.log_a
        << ", log B = " << br.diag.growth.log_b << ", "
        << (br.diag.growth.ok ? "holds" : "FAILS (factorial drift left at this k)") << "\n";
  emit(j, f, human.str());
  return 0;
}

int cmd_verify(const Flags& f) {
  gv::RunOptions o = to_options(f);
  std::vector<gv::CheckLine> checks = gv::run_verify(o);
  bool all_ok = true;
  gv::Json arr = gv::Json::array();
  for (const auto& c : checks) {
    all_ok = all_ok && c.ok;
    std::cout << (c.ok ? "[ok]   " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
    arr.push_back(gv::Json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  }
  gv::Json j{{"checks", std::move(arr)}, {"passed", all_ok}};
  if (f.json_path == "-")
    std::cout << j.dump(2) << "\n";
  else if (!f.json_path.empty())
    write_file(f.json_path, j.dump(2) + "\n");
  std::cout << (all_ok ? "all checks passed\n" : "some checks FAILED\n");
  return all_ok ? 0 : 3;
}

int exit_code_for(gv::Errc c) {
  switch (c) {
    case gv::Errc::SyntaxError:
    case gv::Errc::NonPolynomial:
    case gv::Errc::IndexOutOfRange:
    case gv::Errc::InvalidInput:
    case gv::Errc::NegativeLeadingExponent:
    case gv::Errc::NotASolutionPrefix:
      return 2;
    default:
      return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized power series solutions of polynomial ODEs in delta = z d/dz"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const Flags&);
  };
  const Sub subs[] = {
      {"parse", "parse an equation and print its canonical form", cmd_parse},
      {"solve", "extend the seed to a generalized power series solution", cmd_solve},
      {"linearize", "leading data of dF/du_i along the solution", cmd_linearize},
      {"polygon", "Newton polygon of the linearized operator", cmd_polygon},
      {"reduce", "rewrite the tail equation as L(delta)v + L'v + N(v) = 0", cmd_reduce},
      {"semigroup", "exponent semigroup of the reduced equation", cmd_semigroup},
      {"borel", "Gamma-normalized coefficients and growth diagnostics", cmd_borel},
      {"verify", "run the invariant suite against this equation", cmd_verify},
  };

  std::vector<Flags> flags(std::size(subs));
  std::vector<CLI::App*> apps;
  for (std::size_t i = 0; i < std::size(subs); ++i) {
    CLI::App* sub = app.add_subcommand(subs[i].name, subs[i].help);
    add_common(sub, flags[i]);
    apps.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    for (std::size_t i = 0; i < std::size(subs); ++i)
      if (apps[i]->parsed()) return subs[i].fn(flags[i]);
    std::cerr << "no subcommand\n";
    return 1;
  } catch (const gv::Error& e) {
    std::cerr << gv::error_json(e).dump(2) << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    gv::Json env{{"code", "Internal"}, {"message", e.what()}, {"context", ""}};
    std::cerr << env.dump(2) << "\n";
    return 3;
  }
}
