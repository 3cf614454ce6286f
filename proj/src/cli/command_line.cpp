#include <charconv>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nrq/cli/run.hpp"
#include "nrq/error.hpp"

namespace nrq::cli {

using nlohmann::json;

namespace {

void print_error(std::ostream& err, std::string_view code, std::string_view message, int exit_code) {
  const json j = {{"error", code}, {"message", message}, {"exit_code", exit_code}};
  err << j.dump() << '\n';
}

struct Flags {
  RunConfig layer;
  std::optional<std::string> range, model, format, config, report;
  bool overlay = false;
};

void add_common(CLI::App& sub, Flags& f) {
  sub.add_option("--config", f.config, "JSON config file (see docs/config.md)");
  sub.add_option("--output,-o", f.layer.output, "write data to this file atomically");
  sub.add_option("--format", f.format, "csv | json | svgdata");
  sub.add_option("--report", f.report, "write the JSON run report to this file");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::optional<std::string> env_seed) {
  CLI::App app{"Newton-map densities, cycles and operator checks", "nrq"};
  app.require_subcommand(1);
  Flags f;
  RunConfig& l = f.layer;

  auto* orbit = app.add_subcommand("orbit", "record one Newton orbit");
  auto* density = app.add_subcommand("density", "orbit visit density");
  auto* cycles = app.add_subcommand("cycles", "periodic orbits of the Newton map");
  auto* interfere = app.add_subcommand("interfere", "two-well interference density");
  auto* ops = app.add_subcommand("ops-check", "operator residual suite");
  auto* dispersion = app.add_subcommand("dispersion", "dispersion relation samples");

  for (CLI::App* s : {orbit, density, cycles})
    s->add_option("--poly", l.poly, "polynomial in x, e.g. \"x^2+1\"");
  for (CLI::App* s : {orbit, density}) s->add_option("--x0", l.x0, "start point");
  for (CLI::App* s : {orbit, density, interfere}) s->add_option("--iters", l.iters, "n (step limit for orbit)");
  for (CLI::App* s : {density, interfere}) {
    s->add_option("--seed", l.seed, "RNG seed (fallback: NRQ_SEED)");
    s->add_option("--burnin", l.burnin, "discarded iterates n0");
    s->add_option("--bins", l.bins, "histogram bins");
    s->add_option("--chains", l.chains, "independent chains, merged in index order");
  }
  for (CLI::App* s : {density, interfere, cycles}) s->add_option("--range", f.range, "lo:hi (use --range=lo:hi)");
  density->add_flag("--overlay", f.overlay, "draw the Cauchy density in svgdata output");
  interfere->add_option("--delta", l.delta, "well depth parameter");
  cycles->add_option("--period", l.period, "cycle period");
  cycles->add_option("--grid-points", l.grid_points, "search grid size");
  for (CLI::App* s : {ops, dispersion}) {
    s->add_option("--n", l.n, "grid points");
    s->add_option("--spacing", l.spacing, "grid spacing");
    s->add_option("--mass", l.mass, "mass (in frequency units)");
  }
  dispersion->add_option("--model", f.model, "klein-gordon | tight-binding");
  for (CLI::App* s : {orbit, density, cycles, interfere, ops, dispersion}) add_common(*s, f);

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, "ConfigError", e.what(), kExitConfigError);
    return kExitConfigError;
  }

  RunConfig resolved;
  try {
    const std::pair<CLI::App*, Command> table[] = {
        {orbit, Command::Orbit},         {density, Command::Density},        {cycles, Command::Cycles},
        {interfere, Command::Interfere}, {ops, Command::OpsCheck},           {dispersion, Command::Dispersion}};
    for (const auto& [sub, cmd] : table)
      if (sub->parsed()) l.command = cmd;
    if (f.overlay) l.overlay = true;
    if (f.range) l.range = parse_range(*f.range);
    json extra = json::object();
    if (f.model) extra["model"] = *f.model;
    if (f.format) extra["format"] = *f.format;
    l = layer(l, config_from_json(extra));

    RunConfig base;
    if (env_seed && uses_seed(*l.command)) {
      std::uint64_t s = 0;
      const auto [ptr, ec] = std::from_chars(env_seed->data(), env_seed->data() + env_seed->size(), s);
      if (env_seed->empty() || ec != std::errc() || ptr != env_seed->data() + env_seed->size())
        throw Error(Errc::ConfigError, fmt::format("NRQ_SEED '{}' is not an unsigned integer", *env_seed));
      base.seed = s;
    }
    if (f.config) base = layer(base, load_config_file(*f.config));
    base.command.reset();
    resolved = resolve(layer(base, l));
  } catch (const Error& e) {
    print_error(err, errc_name(e.code()), e.what(), kExitConfigError);
    return kExitConfigError;
  }

  try {
    RunOutput result = execute(resolved);
    if (resolved.output) {
      write_atomic(*resolved.output, result.data);
      result.report.artifacts.push_back({*resolved.output, sha256_hex(result.data), result.data.size()});
    } else {
      out << result.data;
      out.flush();
      result.report.artifacts.push_back({"", sha256_hex(result.data), result.data.size()});
    }
    const std::string report = to_json(result.report).dump(2) + "\n";
    if (f.report) write_atomic(*f.report, report);
    else if (resolved.output) out << report;
    return kExitOk;
  } catch (const Error& e) {
    print_error(err, errc_name(e.code()), e.what(), kExitRuntimeError);
  } catch (const std::exception& e) {
    print_error(err, "RuntimeError", e.what(), kExitRuntimeError);
  }
  return kExitRuntimeError;
}

}  // namespace nrq::cli
