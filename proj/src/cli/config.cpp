#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "nrq/cli/polynomial_parser.hpp"
#include "nrq/cli/run.hpp"
#include "nrq/error.hpp"
#include "nrq/interference.hpp"
#include "nrq/qops.hpp"

namespace nrq::cli {

using nlohmann::json;

std::string_view command_name(Command c) noexcept {
  switch (c) {
    case Command::Orbit: return "orbit";
    case Command::Density: return "density";
    case Command::Cycles: return "cycles";
    case Command::Interfere: return "interfere";
    case Command::OpsCheck: return "ops-check";
    case Command::Dispersion: return "dispersion";
  }
  return "?";
}

std::string_view format_name(OutputFormat f) noexcept {
  switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::SvgData: return "svgdata";
  }
  return "?";
}

std::string_view model_name(DispersionModel m) noexcept {
  return m == DispersionModel::KleinGordon ? "klein-gordon" : "tight-binding";
}

namespace {

[[noreturn]] void config_error(const std::string& message) { throw Error(Errc::ConfigError, message); }

template <class E, std::size_t N>
E lookup(std::string_view text, const std::pair<std::string_view, E> (&table)[N], const char* what) {
  for (const auto& [name, value] : table)
    if (name == text) return value;
  config_error(fmt::format("unknown {} '{}'", what, text));
}

constexpr std::pair<std::string_view, Command> kCommands[] = {
    {"orbit", Command::Orbit},         {"density", Command::Density},
    {"cycles", Command::Cycles},       {"interfere", Command::Interfere},
    {"ops-check", Command::OpsCheck},  {"dispersion", Command::Dispersion},
};
constexpr std::pair<std::string_view, OutputFormat> kFormats[] = {
    {"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}, {"svgdata", OutputFormat::SvgData}};
constexpr std::pair<std::string_view, DispersionModel> kModels[] = {
    {"klein-gordon", DispersionModel::KleinGordon}, {"tight-binding", DispersionModel::TightBinding}};

template <class T>
void pick(std::optional<T>& into, const std::optional<T>& high) {
  if (high) into = high;
}

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    config_error(fmt::format("config key '{}' has the wrong type", key));
  }
}

std::uint64_t get_count(const json& j, const char* key) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    config_error(fmt::format("config key '{}' must be a non-negative integer", key));
  return j.get<std::uint64_t>();
}

double get_real(const json& j, const char* key) {
  if (!j.is_number()) config_error(fmt::format("config key '{}' must be a number", key));
  return j.get<double>();
}

// Which fields a command reads; anything else set by the user is an error.
struct Applies {
  bool poly = false, x0 = false, seed = false, iters = false, burnin = false, bins = false,
       range = false, delta = false, n = false, spacing = false, period = false, grid_points = false,
       mass = false, model = false, overlay = false, chains = false;
};

Applies applies_to(Command c) {
  switch (c) {
    case Command::Orbit: return {.poly = true, .x0 = true, .iters = true};
    case Command::Density:
      return {.poly = true, .x0 = true, .seed = true, .iters = true, .burnin = true, .bins = true,
              .range = true, .overlay = true, .chains = true};
    case Command::Interfere:
      return {.seed = true, .iters = true, .burnin = true, .bins = true, .range = true, .delta = true,
              .chains = true};
    case Command::Cycles: return {.poly = true, .range = true, .period = true, .grid_points = true};
    case Command::OpsCheck: return {.n = true, .spacing = true, .mass = true};
    case Command::Dispersion: return {.n = true, .spacing = true, .mass = true, .model = true};
  }
  return {};
}

template <class T>
void check_applies(const std::optional<T>& field, bool applies, const char* name, Command c) {
  if (field && !applies) config_error(fmt::format("'{}' does not apply to {}", name, command_name(c)));
}

}  // namespace

RunConfig layer(const RunConfig& low, const RunConfig& high) {
  RunConfig r = low;
  pick(r.command, high.command);
  pick(r.poly, high.poly);
  pick(r.x0, high.x0);
  pick(r.seed, high.seed);
  pick(r.iters, high.iters);
  pick(r.burnin, high.burnin);
  pick(r.bins, high.bins);
  pick(r.range, high.range);
  pick(r.delta, high.delta);
  pick(r.n, high.n);
  pick(r.spacing, high.spacing);
  pick(r.period, high.period);
  pick(r.grid_points, high.grid_points);
  pick(r.mass, high.mass);
  pick(r.model, high.model);
  pick(r.overlay, high.overlay);
  pick(r.chains, high.chains);
  pick(r.output, high.output);
  pick(r.format, high.format);
  return r;
}

bool uses_seed(Command c) { return applies_to(c).seed; }

Range parse_range(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) config_error(fmt::format("range '{}' is not of the form lo:hi", text));
  const auto number = [&](std::string_view s) {
    std::string owned(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(owned, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (owned.empty() || used != owned.size() || !std::isfinite(v))
      config_error(fmt::format("range bound '{}' is not a finite number", s));
    return v;
  };
  const Range r{number(text.substr(0, colon)), number(text.substr(colon + 1))};
  if (!(r.lo < r.hi)) config_error(fmt::format("range '{}' needs lo < hi", text));
  return r;
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) config_error("config must be a JSON object");
  RunConfig c;
  for (const auto& [key, v] : j.items()) {
    const char* k = key.c_str();
    if (key == "command") c.command = lookup(get_as<std::string>(v, k), kCommands, "command");
    else if (key == "poly") c.poly = get_as<std::string>(v, k);
    else if (key == "x0") c.x0 = get_real(v, k);
    else if (key == "seed") c.seed = get_count(v, k);
    else if (key == "iters") c.iters = get_count(v, k);
    else if (key == "burnin") c.burnin = get_count(v, k);
    else if (key == "bins") c.bins = get_count(v, k);
    else if (key == "range") {
      if (v.is_string()) c.range = parse_range(v.get<std::string>());
      else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        c.range = Range{v[0].get<double>(), v[1].get<double>()};
        if (!(c.range->lo < c.range->hi)) config_error("range needs lo < hi");
      } else config_error("config key 'range' must be \"lo:hi\" or [lo, hi]");
    }
    else if (key == "delta") c.delta = get_real(v, k);
    else if (key == "n") c.n = get_count(v, k);
    else if (key == "spacing") c.spacing = get_real(v, k);
    else if (key == "period") c.period = get_count(v, k);
    else if (key == "grid_points") c.grid_points = get_count(v, k);
    else if (key == "mass") c.mass = get_real(v, k);
    else if (key == "model") c.model = lookup(get_as<std::string>(v, k), kModels, "model");
    else if (key == "overlay") c.overlay = get_as<bool>(v, k);
    else if (key == "chains") c.chains = get_count(v, k);
    else if (key == "output") c.output = get_as<std::string>(v, k);
    else if (key == "format") c.format = lookup(get_as<std::string>(v, k), kFormats, "format");
    else config_error(fmt::format("unknown config key '{}'", key));
  }
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error(fmt::format("cannot open config file '{}'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  json j;
  try {
    j = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    config_error(fmt::format("config file '{}' is not valid JSON: {}", path, e.what()));
  }
  return config_from_json(j);
}

json to_json(const RunConfig& c) {
  json j = json::object();
  if (c.command) j["command"] = command_name(*c.command);
  if (c.poly) j["poly"] = *c.poly;
  if (c.x0) j["x0"] = *c.x0;
  if (c.seed) j["seed"] = *c.seed;
  if (c.iters) j["iters"] = *c.iters;
  if (c.burnin) j["burnin"] = *c.burnin;
  if (c.bins) j["bins"] = *c.bins;
  if (c.range) j["range"] = json::array({c.range->lo, c.range->hi});
  if (c.delta) j["delta"] = *c.delta;
  if (c.n) j["n"] = *c.n;
  if (c.spacing) j["spacing"] = *c.spacing;
  if (c.period) j["period"] = *c.period;
  if (c.grid_points) j["grid_points"] = *c.grid_points;
  if (c.mass) j["mass"] = *c.mass;
  if (c.model) j["model"] = model_name(*c.model);
  if (c.overlay) j["overlay"] = *c.overlay;
  if (c.chains) j["chains"] = *c.chains;
  if (c.output) j["output"] = *c.output;
  if (c.format) j["format"] = format_name(*c.format);
  return j;
}

RunConfig resolve(const RunConfig& in) {
  if (!in.command) config_error("no command given");
  const Command cmd = *in.command;
  const Applies a = applies_to(cmd);
  check_applies(in.poly, a.poly, "poly", cmd);
  check_applies(in.x0, a.x0, "x0", cmd);
  check_applies(in.seed, a.seed, "seed", cmd);
  check_applies(in.iters, a.iters, "iters", cmd);
  check_applies(in.burnin, a.burnin, "burnin", cmd);
  check_applies(in.bins, a.bins, "bins", cmd);
  check_applies(in.range, a.range, "range", cmd);
  check_applies(in.delta, a.delta, "delta", cmd);
  check_applies(in.n, a.n, "n", cmd);
  check_applies(in.spacing, a.spacing, "spacing", cmd);
  check_applies(in.period, a.period, "period", cmd);
  check_applies(in.grid_points, a.grid_points, "grid_points", cmd);
  check_applies(in.mass, a.mass, "mass", cmd);
  check_applies(in.model, a.model, "model", cmd);
  check_applies(in.overlay, a.overlay, "overlay", cmd);
  check_applies(in.chains, a.chains, "chains", cmd);

  RunConfig d;
  d.command = cmd;
  d.format = OutputFormat::Csv;
  switch (cmd) {
    case Command::Orbit:
      d.poly = "x^2+1";
      d.x0 = 1.0 / std::sqrt(3.0);
      d.iters = 100;
      break;
    case Command::Density:
      d.poly = "x^2+1";
      d.x0 = 0.7;
      d.seed = 1;
      d.iters = 201'000;
      d.burnin = kDefaultBurnIn;
      d.bins = kDefaultBins;
      d.range = Range{};
      d.overlay = false;
      d.chains = 1;
      break;
    case Command::Interfere: {
      const InterferenceConfig ic;
      d.seed = 1;
      d.delta = ic.delta;
      d.iters = ic.iterations;
      d.burnin = ic.burn_in;
      d.bins = ic.bins;
      d.range = ic.range;
      d.chains = 1;
      break;
    }
    case Command::Cycles:
      d.poly = "x^2+1";
      d.period = 2;
      d.range = Range{-3.0, 3.0};
      d.grid_points = 1000;
      break;
    case Command::OpsCheck:
      d.n = 64;
      d.spacing = 1.0;
      d.mass = 1.0;
      d.format = OutputFormat::Json;
      break;
    case Command::Dispersion:
      d.n = 256;
      d.spacing = 1.0;
      d.mass = 1.0;
      d.model = DispersionModel::TightBinding;
      break;
  }
  RunConfig r = layer(d, in);

  if (r.poly) parse_polynomial(*r.poly);
  if (r.x0 && !std::isfinite(*r.x0)) config_error("x0 must be finite");
  if (r.bins && *r.bins < 2) config_error("bins must be at least 2");
  if (cmd == Command::Orbit && *r.iters < 1) config_error("iters must be at least 1");
  if (r.burnin && !(*r.iters > *r.burnin)) config_error("iters must exceed burnin");
  if (r.range && !(r.range->lo < r.range->hi)) config_error("range needs lo < hi");
  if (r.delta && !(*r.delta > 0.0 && std::isfinite(*r.delta))) config_error("delta must be positive");
  if (r.n && (*r.n < 2 || *r.n > qops::kMaxGridPoints)) config_error("n must lie in [2, 4096]");
  if (r.spacing && !(*r.spacing > 0.0 && std::isfinite(*r.spacing))) config_error("spacing must be positive");
  if (r.period && *r.period < 1) config_error("period must be at least 1");
  if (r.grid_points && *r.grid_points < 2) config_error("grid_points must be at least 2");
  if (r.mass) {
    const bool needs_positive = cmd != Command::Dispersion || *r.model == DispersionModel::TightBinding;
    if (!std::isfinite(*r.mass) || *r.mass < 0.0 || (needs_positive && *r.mass == 0.0))
      config_error(needs_positive ? "mass must be positive" : "mass must be non-negative");
  }
  if (r.chains && (*r.chains < 1 || *r.chains > 64)) config_error("chains must lie in [1, 64]");

  const OutputFormat f = *r.format;
  const bool ok = cmd == Command::OpsCheck ? f == OutputFormat::Json
                  : (cmd == Command::Density || cmd == Command::Interfere)
                      ? f != OutputFormat::Json
                      : f == OutputFormat::Csv;
  if (!ok) config_error(fmt::format("format '{}' is not available for {}", format_name(f), command_name(cmd)));
  if (r.overlay && *r.overlay && f != OutputFormat::SvgData) config_error("overlay needs --format svgdata");
  return r;
}

}  // namespace nrq::cli
