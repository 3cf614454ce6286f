#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "nrq/cli/emit.hpp"
#include "nrq/cli/polynomial_parser.hpp"
#include "nrq/cli/run.hpp"
#include "nrq/error.hpp"
#include "nrq/interference.hpp"
#include "nrq/rng.hpp"

using namespace nrq;
using namespace nrq::cli;
namespace fs = std::filesystem;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::IoError;
}

std::size_t syntax_offset(std::string_view text) {
  try {
    parse_polynomial(text);
  } catch (const SyntaxError& e) {
    return e.position();
  }
  FAIL("no syntax error for ", text);
  return 0;
}

std::vector<double> coeffs(std::string_view text) {
  const Polynomial p = parse_polynomial(text);
  return {p.coefficients().begin(), p.coefficients().end()};
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args, std::optional<std::string> env_seed = std::nullopt) {
  args.insert(args.begin(), "nrq");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err, env_seed);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("nrq-test-" + std::to_string(derive_seed(reinterpret_cast<std::uintptr_t>(this), 0)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("parse_polynomial examples") {
  CHECK(coeffs("x^2+1") == std::vector<double>{1, 0, 1});
  const std::vector<double> c = coeffs("(x^2+0.01)*((x-3)^2+0.01)");
  const std::vector<double> hand{0.0901, -0.06, 9.02, -6.0, 1.0};
  REQUIRE(c.size() == 5);
  // Decimal 0.01 is exact here, so every coefficient is the correctly rounded value of the hand expansion.
  for (std::size_t i = 0; i < 5; ++i) CHECK(c[i] == hand[i]);
  CHECK(syntax_offset("x^+2") == 2);
}

TEST_CASE("parser grammar") {
  CHECK(coeffs("-x") == std::vector<double>{0, -1});
  CHECK(coeffs("2*x - 3") == std::vector<double>{-3, 2});
  CHECK(coeffs(" ( x - 1 ) ^ 3 ") == std::vector<double>{-1, 3, -3, 1});
  CHECK(coeffs("--x") == std::vector<double>{0, 1});
  CHECK(coeffs("1.5e1*x^2+x*x-1e-5") == std::vector<double>{-1e-5, 0, 16});
  CHECK(coeffs("x^2 - (x^2 - x)") == std::vector<double>{0, 1});  // cancelled leading term dropped
  CHECK(coeffs("0.1*x*10") == std::vector<double>{0, 1});  // exact, not 1.0000000000000002
  CHECK(coeffs(".5*x+3.") == std::vector<double>{3, 0.5});
  CHECK(syntax_offset("") == 0);
  CHECK(syntax_offset("x +") == 3);
  CHECK(syntax_offset("x^") == 2);
  CHECK(syntax_offset("(x+1") == 4);
  CHECK(syntax_offset("x+1)") == 3);
  CHECK(syntax_offset("2y") == 1);
  CHECK(syntax_offset("x^2.5") == 3);
  CHECK(syntax_offset("x^99") == 2);
  CHECK(syntax_offset("1e") == 2);
  CHECK(code_of([] { parse_polynomial("3"); }) == Errc::DegreeZero);
  CHECK(code_of([] { parse_polynomial("x-x+2"); }) == Errc::DegreeZero);
  CHECK(code_of([] { parse_polynomial("x^0"); }) == Errc::DegreeZero);
}

TEST_CASE("printing then parsing is idempotent on canonical forms") {
  Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t degree = 1 + static_cast<std::size_t>(rng.uniform() * 6);
    std::vector<double> c(degree + 1);
    for (double& v : c) {
      const double r = rng.uniform();
      v = r < 0.3 ? 0.0 : std::ldexp(rng.uniform(-1.0, 1.0), static_cast<int>(rng.uniform(-30, 30)));
    }
    if (c.back() == 0.0) c.back() = 1.0;
    const Polynomial p(c);
    const std::string text = p.to_string();
    const Polynomial q = parse_polynomial(text);
    CHECK(q == p);
    CHECK(q.to_string() == text);
  }
}

TEST_CASE("density CSV examples") {
  SUBCASE("two bins") {
    const auto d = EmpiricalDensity::from_parts(0.0, 2.0, {1, 3}, 0, 0);
    const std::string csv = emit_csv(d);
    CHECK(csv == "# nrq-csv v1\n# lo=0 hi=2 bins=2 total=4 below=0 above=0\nbin_center,density\n"
                 "0.5,0.25\n1.5,0.75\n");
  }
  SUBCASE("no in-range mass") {
    const auto d = EmpiricalDensity::from_parts(-1.0, 1.0, {0, 0, 0}, 4, 2);
    const std::string csv = emit_csv(d);
    CHECK(csv.find("below=4 above=2") != std::string::npos);
    CHECK(count(csv, ",0\n") == 3);
    CHECK(parse_density_csv(csv) == d);
  }
  CHECK(emit_csv(EmpiricalDensity(0.0, 1.0, 2)).find('\r') == std::string::npos);
}

TEST_CASE("density CSV round trip is bit exact") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const double lo = rng.uniform(-50.0, 0.0), hi = lo + rng.uniform(0.001, 100.0);
    EmpiricalDensity d(lo, hi, 2 + static_cast<std::size_t>(rng.uniform() * 700));
    const int n = static_cast<int>(rng.uniform() * 300'000);
    for (int i = 0; i < n; ++i) d.add(lo + (hi - lo) * (rng.uniform() * 1.2 - 0.1));
    const std::string csv = emit_csv(d);
    const EmpiricalDensity back = parse_density_csv(csv);
    CHECK(back == d);
    CHECK(emit_csv(back) == csv);
  }
  const auto run = accumulate_density(Polynomial({1.0, 0.0, 1.0}), 0.7, 1000, 201'000, {}, 200, 42);
  CHECK(parse_density_csv(emit_csv(run.density)) == run.density);
}

TEST_CASE("malformed density CSV") {
  const std::string good = emit_csv(EmpiricalDensity::from_parts(0.0, 2.0, {1, 3}, 0, 0));
  CHECK(code_of([] { parse_density_csv("hello"); }) == Errc::IoError);
  CHECK(code_of([&] { parse_density_csv(good.substr(0, good.size() - 9)); }) == Errc::IoError);
  std::string bad = good;
  bad.replace(bad.find("total=4"), 7, "total=5");
  CHECK(code_of([&] { parse_density_csv(bad); }) == Errc::IoError);
  bad = good;
  bad.replace(bad.find("0.75"), 4, "abc!");
  CHECK(code_of([&] { parse_density_csv(bad); }) == Errc::IoError);
}

TEST_CASE("spectrum, orbit and cycle CSV") {
  const std::vector<qops::BandPoint> band{{-1.0, 0.5}, {0.0, 0.0}, {1.0, 0.5}};
  CHECK(emit_csv(band) == "# nrq-csv v1\nk,omega\n-1,0.5\n0,0\n1,0.5\n");
  CHECK(code_of([] { emit_csv(std::vector<qops::BandPoint>{}); }) == Errc::InvalidArgument);

  const Orbit orbit = iterate_orbit(Polynomial({1.0, 0.0, 1.0}), 1.0, {});
  CHECK(emit_csv(orbit) == "# nrq-csv v1\n# status=pole step=1\nstep,x\n0,1\n1,0\n");
  const std::string cycles = emit_csv(find_cycles(Polynomial({1.0, 0.0, 1.0}), 2, {-3.0, 3.0}, 1000));
  CHECK(cycles.starts_with("# nrq-csv v1\n# cycles=1 "));
  CHECK(cycles.find("0,0,-0.57735026918962") != std::string::npos);
  CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("SVG data structure") {
  const auto run = accumulate_density(Polynomial({1.0, 0.0, 1.0}), 0.7, 1000, 201'000, {}, 200, 42);
  const auto peaks = peak_detect(run.density);
  SvgOptions with_overlay;
  with_overlay.overlay = cauchy_density;
  const std::string svg = emit_svgdata(run.density, peaks, with_overlay);
  CHECK(count(svg, "<polyline") == 2);
  CHECK(count(svg, "<svg") == 1);
  CHECK(count(svg, "</svg>") == 1);
  CHECK(count(svg, "<line") >= 2);
  CHECK(count(emit_svgdata(run.density, peaks), "<polyline") == 1);

  const auto interference = interference_experiment({}, 7);
  const auto two = peak_detect(interference.density);
  const std::string isvg = emit_svgdata(interference.density, two);
  CHECK(count(isvg, "class=\"peak\"") == 2);
  CHECK(emit_svgdata(interference_experiment({}, 7).density, two) == isvg);
}

TEST_CASE("range flag parsing") {
  const Range r = parse_range("-10:10");
  CHECK(r.lo == -10.0);
  CHECK(r.hi == 10.0);
  CHECK(parse_range("-2.5:1e1").hi == 10.0);
  for (const char* bad : {"", "1", "1:", ":1", "2:1", "1:1", "a:b", "1:2:3", "nan:1", "0:inf"})
    CHECK(code_of([&] { parse_range(bad); }) == Errc::ConfigError);
}

TEST_CASE("config layering and resolution") {
  RunConfig low, high;
  low.seed = 1;
  low.bins = 50;
  high.seed = 2;
  const RunConfig merged = layer(low, high);
  CHECK(*merged.seed == 2);
  CHECK(*merged.bins == 50);

  RunConfig c;
  c.command = Command::Density;
  const RunConfig d = resolve(c);
  CHECK(*d.poly == "x^2+1");
  CHECK(*d.x0 == 0.7);
  CHECK(*d.iters == 201'000);
  CHECK(*d.burnin == 1000);
  CHECK(*d.bins == 200);
  CHECK(d.range->lo == -10.0);
  CHECK(*d.format == OutputFormat::Csv);
  CHECK_FALSE(d.delta.has_value());

  c.delta = 0.5;
  CHECK(code_of([&] { resolve(c); }) == Errc::ConfigError);
  c.delta.reset();
  c.iters = 1000;
  CHECK(code_of([&] { resolve(c); }) == Errc::ConfigError);  // iters must exceed burnin
  c.iters.reset();
  c.poly = "x^";
  CHECK(code_of([&] { resolve(c); }) == Errc::SyntaxError);
  c.poly = "7";
  CHECK(code_of([&] { resolve(c); }) == Errc::DegreeZero);
  c.poly.reset();
  c.format = OutputFormat::Json;
  CHECK(code_of([&] { resolve(c); }) == Errc::ConfigError);
  c.format = OutputFormat::Csv;
  c.overlay = true;
  CHECK(code_of([&] { resolve(c); }) == Errc::ConfigError);  // overlay needs svgdata

  RunConfig ops;
  ops.command = Command::OpsCheck;
  CHECK(*resolve(ops).format == OutputFormat::Json);
  ops.n = 5000;
  CHECK(code_of([&] { resolve(ops); }) == Errc::ConfigError);
  CHECK(code_of([] { resolve(RunConfig{}); }) == Errc::ConfigError);
}

TEST_CASE("JSON config schema") {
  const auto j = nlohmann::json::parse(R"({"poly": "x^2-2", "x0": 1.5, "seed": 9, "range": "-3:3", "bins": 64,
                                           "format": "svgdata", "overlay": true})");
  const RunConfig c = config_from_json(j);
  CHECK(*c.poly == "x^2-2");
  CHECK(*c.seed == 9);
  CHECK(c.range->lo == -3.0);
  CHECK(*c.format == OutputFormat::SvgData);
  CHECK(config_from_json(nlohmann::json::parse(R"({"range": [-1, 2]})")).range->hi == 2.0);
  for (const char* bad : {R"({"bogus": 1})", R"({"seed": -1})", R"({"seed": 1.5})", R"({"x0": "a"})",
                          R"({"range": [2, 1]})", R"({"format": "xml"})", R"([1, 2])", R"({"model": "dirac"})"})
    CHECK(code_of([&] { config_from_json(nlohmann::json::parse(bad)); }) == Errc::ConfigError);
  // The echoed effective config reads back to itself.
  RunConfig density;
  density.command = Command::Density;
  const RunConfig resolved = resolve(density);
  CHECK(to_json(config_from_json(to_json(resolved))) == to_json(resolved));
}

TEST_CASE("SHA-256 digests") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("command line: Cauchy density run") {
  const Result r = invoke({"density", "--poly", "x^2+1", "--x0", "0.7", "--iters", "201000", "--burnin", "1000",
                        "--bins", "200", "--range=-10:10", "--seed", "42"});
  CHECK(r.code == kExitOk);
  CHECK(r.err.empty());
  const EmpiricalDensity d = parse_density_csv(r.out);
  CHECK(d.total() == 200'000);
  CHECK(d.bins() == 200);
  CHECK(density_distance(d, cauchy_density, DensityMetric::L1) <= 0.05);
  // Defaults reproduce the same run.
  CHECK(invoke({"density", "--seed", "42"}).out == r.out);
  // The seed only feeds restarts, and this orbit needs none.
  CHECK(invoke({"density", "--seed", "43"}).out == r.out);
  CHECK(invoke({"density", "--x0", "0.71"}).out != r.out);
}

TEST_CASE("command line: interference, cycles, orbit, dispersion") {
  const Result i = invoke({"interfere", "--delta", "0.01", "--seed", "7"});
  CHECK(i.code == kExitOk);
  CHECK(peak_detect(parse_density_csv(i.out)).size() == 2);
  const Result svg = invoke({"interfere", "--seed", "7", "--format", "svgdata"});
  CHECK(count(svg.out, "class=\"peak\"") == 2);
  const Result fig1 = invoke({"density", "--seed", "42", "--format", "svgdata", "--overlay"});
  CHECK(count(fig1.out, "<polyline") == 2);

  const Result c = invoke({"cycles", "--period", "2", "--range=-3:3"});
  CHECK(c.code == kExitOk);
  CHECK(c.out.find("# cycles=1") != std::string::npos);

  const Result o = invoke({"orbit"});
  CHECK(o.code == kExitOk);
  CHECK(count(o.out, "\n") == 3 + 101);

  const Result kg = invoke({"dispersion", "--model", "klein-gordon", "--n", "16", "--mass", "0"});
  CHECK(kg.code == kExitOk);
  CHECK(kg.out.find("\n0,0\n") != std::string::npos);
  const Result tb = invoke({"dispersion", "--n", "8"});
  const auto edge = tb.out.rfind("\n3.1415926535897931,");
  REQUIRE(edge != std::string::npos);
  CHECK(std::stod(tb.out.substr(edge + 20)) == doctest::Approx(2.0).epsilon(1e-14));  // 4t at the zone edge, t = 1/2
}

TEST_CASE("command line: ops-check") {
  const Result r = invoke({"ops-check", "--n", "64"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "ok");
  for (const auto& c : j["checks"]) {
    CAPTURE(c["name"].get<std::string>());
    CHECK(c["value"].get<double>() <= c["tol"].get<double>());
    if (c["tol"].get<double>() == 1e-12) CHECK(c["value"].get<double>() <= 1e-12);
  }
  CHECK_FALSE(j["uncertainty"]["asserted"].get<bool>());
}

TEST_CASE("command line: errors are single-line JSON with nonzero exit codes") {
  const std::vector<std::pair<std::vector<std::string>, int>> cases{
      {{}, kExitConfigError},
      {{"explode"}, kExitConfigError},
      {{"density", "--bins", "1"}, kExitConfigError},
      {{"density", "--range=3:1"}, kExitConfigError},
      {{"density", "--poly", "x^+2"}, kExitConfigError},
      {{"density", "--poly", "5"}, kExitConfigError},
      {{"density", "--format", "json"}, kExitConfigError},
      {{"density", "--iters", "abc"}, kExitConfigError},
      {{"ops-check", "--n", "1"}, kExitConfigError},
      {{"dispersion", "--model", "dirac"}, kExitConfigError},
      {{"density", "--config", "/nonexistent/config.json"}, kExitConfigError},
      {{"cycles", "--output", "/nonexistent/dir/out.csv"}, kExitRuntimeError},
  };
  for (const auto& [args, expected] : cases) {
    const Result r = invoke(args);
    CAPTURE(r.err);
    CHECK(r.code == expected);
    REQUIRE(!r.err.empty());
    CHECK(count(r.err, "\n") == 1);
    CHECK(r.err.back() == '\n');
    const auto j = nlohmann::json::parse(r.err);
    CHECK(j.contains("error"));
    CHECK(j.contains("message"));
    CHECK(j["exit_code"] == expected);
  }
  const auto j = nlohmann::json::parse(invoke({"density", "--poly", "x^+2"}).err);
  CHECK(j["error"] == "SyntaxError");
  CHECK(j["message"].get<std::string>().find("offset 2") != std::string::npos);
  CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("command line: seed and config precedence") {
  TempDir dir;
  const auto baseline = [&](const char* seed) { return invoke({"density", "--iters", "20000", "--seed", seed}).out; };
  CHECK(invoke({"density", "--iters", "20000"}, "5").out == baseline("5"));
  CHECK(invoke({"density", "--iters", "20000", "--seed", "6"}, "5").out == baseline("6"));
  CHECK(invoke({"density"}, "x").code == kExitConfigError);
  CHECK(invoke({"cycles"}, "x").code == kExitOk);  // cycles draws no random numbers

  const fs::path config = dir.path / "config.json";
  std::ofstream(config) << R"({"seed": 8, "iters": 20000})";
  CHECK(invoke({"density", "--config", config.string()}, "5").out == baseline("8"));
  CHECK(invoke({"density", "--config", config.string(), "--seed", "6"}, "5").out == baseline("6"));
  std::ofstream(config) << R"({"delta": 0.1})";
  CHECK(invoke({"density", "--config", config.string()}).code == kExitConfigError);
}

TEST_CASE("command line: atomic output, report digests and reruns") {
  TempDir dir;
  const fs::path out = dir.path / "fig3.csv";
  const fs::path report = dir.path / "report.json";
  const Result a = invoke({"interfere", "--seed", "7", "--output", out.string()});
  REQUIRE(a.code == kExitOk);
  const std::string first = slurp(out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["artifacts"][0]["sha256"] == sha256_hex(first));
  CHECK(j["artifacts"][0]["bytes"] == first.size());
  CHECK(j["config"]["delta"] == 0.01);
  CHECK(j["restart_count"].is_number_unsigned());
  for (const auto& entry : fs::directory_iterator(dir.path))
    CHECK(entry.path().filename().string().find(".tmp") == std::string::npos);

  const Result b = invoke({"interfere", "--seed", "7", "--output", out.string(), "--report", report.string()});
  CHECK(b.out.empty());
  CHECK(slurp(out) == first);
  CHECK(nlohmann::json::parse(slurp(report))["artifacts"][0]["sha256"] == j["artifacts"][0]["sha256"]);
}

TEST_CASE("command line: chains merge deterministically") {
  const Result a = invoke({"density", "--iters", "50000", "--chains", "4", "--seed", "3"});
  const Result b = invoke({"density", "--iters", "50000", "--chains", "4", "--seed", "3"});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  const EmpiricalDensity d = parse_density_csv(a.out);
  CHECK(d.total() == 4 * 49'000);
  const EmpiricalDensity single = parse_density_csv(invoke({"density", "--iters", "50000", "--seed", "3"}).out);
  // Chain 0 is the single-chain run.
  for (std::size_t i = 0; i < d.bins(); ++i) CHECK(d.counts()[i] >= single.counts()[i]);
  CHECK(invoke({"density", "--chains", "0"}).code == kExitConfigError);
}
