#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nrq/orbit_stream.hpp"

namespace nrq::cli {

enum class Command { Orbit, Density, Cycles, Interfere, OpsCheck, Dispersion };
enum class OutputFormat { Csv, Json, SvgData };
enum class DispersionModel { KleinGordon, TightBinding };

std::string_view command_name(Command c) noexcept;
std::string_view format_name(OutputFormat f) noexcept;
std::string_view model_name(DispersionModel m) noexcept;

/// One configuration layer. Unset fields fall through to the next layer in
/// the order CLI flags, config file, NRQ_SEED (seed only), per-command
/// defaults. After resolve() every field that applies to the command is set
/// and every other field is empty.
struct RunConfig {
  std::optional<Command> command;
  std::optional<std::string> poly;
  std::optional<double> x0;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> iters;   // n, or the step limit for orbit
  std::optional<std::uint64_t> burnin;  // n0
  std::optional<std::size_t> bins;
  std::optional<Range> range;
  std::optional<double> delta;
  std::optional<std::size_t> n;  // grid points for ops-check and dispersion
  std::optional<double> spacing;
  std::optional<std::size_t> period;
  std::optional<std::size_t> grid_points;
  std::optional<double> mass;
  std::optional<DispersionModel> model;
  std::optional<bool> overlay;
  std::optional<std::size_t> chains;
  std::optional<std::string> output;
  std::optional<OutputFormat> format;
};

/// True for the commands that draw random numbers and therefore read a seed.
bool uses_seed(Command c);

/// Field-wise: values set in `high` win over `low`.
RunConfig layer(const RunConfig& low, const RunConfig& high);

/// Reads a JSON config object (schema in docs/config.md). Throws
/// Error{ConfigError} on unknown keys or ill-typed values.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);

nlohmann::json to_json(const RunConfig& config);

/// "lo:hi" with lo < hi. Throws Error{ConfigError}.
Range parse_range(std::string_view text);

/// Applies per-command defaults and checks applicability and bounds. Throws
/// Error{ConfigError} (or the parser's SyntaxError / DegreeZero for a bad
/// polynomial).
RunConfig resolve(const RunConfig& layered);

struct Artifact {
  std::string path;  // empty for standard output
  std::string sha256;
  std::size_t bytes = 0;
};

struct RunReport {
  RunConfig config;  // effective, after resolve()
  double wall_time_s = 0.0;
  std::uint64_t restart_count = 0;
  std::string status;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<Artifact> artifacts;
};

nlohmann::json to_json(const RunReport& report);

struct RunOutput {
  std::string data;
  RunReport report;
};

/// Runs a resolved config and returns the primary artifact. Nothing is
/// written; see write_atomic. Library errors propagate.
RunOutput execute(const RunConfig& resolved);

/// Writes to a temporary file next to `path`, then renames it into place.
/// Throws Error{IoError}.
void write_atomic(const std::string& path, std::string_view data);

std::string sha256_hex(std::string_view data);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;

/// Full command-line entry point. args[0] is the program name. Data goes to
/// `out` unless --output is given, in which case the run report is printed
/// there instead. Errors are one JSON object on one line of `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::optional<std::string> env_seed);

}  // namespace nrq::cli
