#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gevrey/json_io.hpp"

namespace fs = std::filesystem;
using gevrey::Json;

namespace {

const char* kCli = GEVREY_CLI_PATH;
const char* kData = GEVREY_DATA_DIR;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / "gevrey_cli_tests";
  fs::create_directories(dir);
  return dir;
}

RunResult run(const std::string& args) {
  fs::path dir = scratch();
  fs::path out = dir / "out.txt", err = dir / "err.txt";
  std::string cmd = std::string("\"") + kCli + "\" " + args + " > \"" + out.string() +
                    "\" 2> \"" + err.string() + "\"";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string data(const char* name) { return std::string("\"") + kData + "/" + name + "\""; }

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  REQUIRE_FALSE(j.is_discarded());
  return j;
}

fs::path write_scratch(const char* name, const std::string& content) {
  fs::path p = scratch() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("cli: parse prints the canonical form") {
  RunResult r = run("parse --eq " + data("euler.ode"));
  CHECK(r.code == 0);
  CHECK(r.out.find("order m = 1") != std::string::npos);

  RunResult j = run("parse --eq " + data("euler.ode") + " --json -");
  CHECK(j.code == 0);
  Json doc = parse_json(j.out);
  CHECK(doc.contains("m"));
  CHECK(doc.contains("monomials"));
  CHECK(doc.contains("text"));
  CHECK(doc["m"].get<int>() == 1);
}

TEST_CASE("cli: solve emits the series and is deterministic") {
  std::string args = "solve --eq " + data("euler.ode") + " --horizon 8 --json -";
  RunResult a = run(args);
  CHECK(a.code == 0);
  Json doc = parse_json(a.out);
  CHECK(doc["backend"] == "exact");
  CHECK(doc["k"] == "1");
  CHECK(doc["horizon"] == "8");
  CHECK(doc["mu"].get<int>() == 2);
  REQUIRE(doc["solution"].contains("terms"));
  const Json& terms = doc["solution"]["terms"];
  REQUIRE(terms.size() == 8);
  CHECK(terms[0]["s"]["re"] == "1");
  CHECK(terms[0]["s"]["im"] == "0");
  CHECK(terms[1]["c"]["re"] == "-1");  // c_2 = -1

  RunResult b = run(args);
  CHECK(a.out == b.out);  // byte-identical across runs
}

TEST_CASE("cli: float backend runs the same pipeline") {
  RunResult r =
      run("solve --eq " + data("euler.ode") + " --horizon 8 --backend float --json -");
  CHECK(r.code == 0);
  Json doc = parse_json(r.out);
  CHECK(doc["backend"] == "float");
  CHECK(doc["solution"]["terms"].size() == 8);
  // float coefficients are {re, im} strings
  CHECK(doc["solution"]["terms"][0]["c"].contains("re"));
}

TEST_CASE("cli: linearize reports the leading data") {
  RunResult r = run("linearize --eq " + data("exp.ode") + " --json -");
  CHECK(r.code == 0);
  Json doc = parse_json(r.out);
  CHECK(doc["p"].get<int>() == 1);
  CHECK(doc["stable"].get<bool>());
  CHECK(doc["k"] == "inf");
  REQUIRE(doc["rows"].size() == 2);
}

TEST_CASE("cli: polygon emits hull data and an svg plot") {
  fs::path svg = scratch() / "polygon.svg";
  std::error_code ec;
  fs::remove(svg, ec);
  RunResult r = run("polygon --eq " + data("euler.ode") + " --json - --svg \"" +
                    svg.string() + "\"");
  CHECK(r.code == 0);
  Json doc = parse_json(r.out);
  CHECK(doc.contains("points"));
  CHECK(doc.contains("vertices"));
  CHECK(doc.contains("edges"));
  CHECK(doc["k"] == "1");
  REQUIRE(fs::exists(svg));
  std::string body = slurp(svg);
  CHECK(body.find("<svg") == 0);
}

TEST_CASE("cli: reduce describes the tail equation") {
  RunResult r = run("reduce --eq " + data("euler.ode") + " --json -");
  CHECK(r.code == 0);
  Json doc = parse_json(r.out);
  CHECK(doc["mu"]["mu"].get<int>() == 2);
  CHECK(doc["reduced"]["s_mu"]["re"] == "3");
  CHECK(doc["reduced"]["nu"] == "1");
  CHECK(doc["reduced"]["Lprime"].size() == 1);
  CHECK(doc["reduced"]["N"].size() == 1);
}

TEST_CASE("cli: reduce refuses an infinite k with exit 3") {
  RunResult r = run("reduce --eq " + data("exp.ode"));
  CHECK(r.code == 3);
  Json env = parse_json(r.err);
  CHECK(env["code"] == "NotApplicable");
  CHECK(env.contains("message"));
}

TEST_CASE("cli: semigroup prints the basis") {
  RunResult r = run("semigroup --eq " + data("euler.ode") + " --json -");
  CHECK(r.code == 0);
  Json doc = parse_json(r.out);
  CHECK(doc["tau"].get<int>() == 1);
  REQUIRE(doc["basis"].size() == 1);
  CHECK(doc["basis"][0]["re"] == "1");
  CHECK(doc["schedule_sample"].size() > 0);
}

TEST_CASE("cli: borel reports growth diagnostics") {
  RunResult r = run("borel --eq " + data("euler.ode") + " --horizon 16 --json -");
  CHECK(r.code == 0);
  Json doc = parse_json(r.out);
  const Json& diag = doc["diagnostics"];
  CHECK(diag["k"] == "1");
  CHECK(diag["growth"]["ok"].get<bool>());
  CHECK(diag.contains("radius"));
  CHECK(diag.contains("norms"));
  CHECK(doc["normalized_terms"].get<int>() == 16);
}

TEST_CASE("cli: verify passes on the fixtures") {
  for (const char* eq : {"euler.ode", "exp.ode", "complex.ode"}) {
    RunResult r = run("verify --eq " + data(eq));
    CAPTURE(eq);
    CHECK(r.code == 0);
    CHECK(r.out.find("all checks passed") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
  }
}

TEST_CASE("cli: usage errors exit 1") {
  CHECK(run("").code == 1);                                      // missing subcommand
  CHECK(run("frobnicate").code == 1);                            // unknown subcommand
  CHECK(run("solve --eq x --frob").code == 1);                   // unknown flag
  CHECK(run("solve").code == 1);                                 // missing required --eq
  CHECK(run("--help").code == 0);
}

TEST_CASE("cli: validation errors exit 2 with a json envelope") {
  RunResult missing = run("solve --eq /nonexistent/thing.ode");
  CHECK(missing.code == 2);
  Json env = parse_json(missing.err);
  CHECK(env.contains("code"));
  CHECK(env.contains("message"));

  fs::path bad_eq = write_scratch("bad.ode", "u +* z\n");
  RunResult syntax = run("solve --eq \"" + bad_eq.string() + "\"");
  CHECK(syntax.code == 2);
  Json env2 = parse_json(syntax.err);
  CHECK(env2["code"] == "SyntaxError");
  CHECK(env2["context"].get<std::string>().find("offset=") == 0);

  CHECK(run("solve --eq " + data("euler.ode") + " --k nonsense").code == 2);
  CHECK(run("solve --eq " + data("euler.ode") + " --k 0").code == 2);
  CHECK(run("solve --eq " + data("euler.ode") + " --horizon -3").code == 2);
  CHECK(run("solve --eq " + data("euler.ode") + " --precision 7").code == 2);
  CHECK(run("solve --eq " + data("euler.ode") + " --mu 1.5").code == 2);

  fs::path bad_seed = write_scratch("bad.seed.json", "{oops\n");
  RunResult seed = run("solve --eq " + data("euler.ode") + " --seed \"" +
                       bad_seed.string() + "\"");
  CHECK(seed.code == 2);
  CHECK(parse_json(seed.err)["code"] == "InvalidInput");

  fs::path wrong = write_scratch("wrong.seed.json",
                                 "{\"terms\":[{\"s\":\"1\",\"c\":\"2\"}]}\n");
  RunResult prefix = run("solve --eq " + data("euler.ode") + " --seed \"" +
                         wrong.string() + "\"");
  CHECK(prefix.code == 2);
  CHECK(parse_json(prefix.err)["code"] == "NotASolutionPrefix");
}

TEST_CASE("cli: forced parameters flow through") {
  // forcing mu = 3 must be visible in the reduce artifact
  RunResult r = run("reduce --eq " + data("euler.ode") + " --mu 3 --json -");
  CHECK(r.code == 0);
  Json doc = parse_json(r.out);
  CHECK(doc["mu"]["mu"].get<int>() == 3);
  CHECK(doc["reduced"]["s_mu"]["re"] == "4");

  // forcing k = 2 must fail the growth check at the borel stage
  RunResult b = run("borel --eq " + data("euler.ode") + " --horizon 16 --k 2 --json -");
  CHECK(b.code == 0);
  Json bd = parse_json(b.out);
  CHECK(bd["diagnostics"]["k"] == "2");
  CHECK_FALSE(bd["diagnostics"]["growth"]["ok"].get<bool>());
}

TEST_CASE("cli: json artifacts can be written to files") {
  fs::path out = scratch() / "solution.json";
  std::error_code ec;
  fs::remove(out, ec);
  RunResult r = run("solve --eq " + data("exp.ode") + " --horizon 10 --json \"" +
                    out.string() + "\"");
  CHECK(r.code == 0);
  REQUIRE(fs::exists(out));
  Json doc = parse_json(slurp(out));
  CHECK(doc["k"] == "inf");
  CHECK(doc["solution"]["terms"].size() == 11);  // constant term plus ten more
}
