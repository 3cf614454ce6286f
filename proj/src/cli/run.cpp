#include "nrq/cli/run.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <openssl/evp.h>
#include <unistd.h>

#include "nrq/cli/emit.hpp"
#include "nrq/cli/polynomial_parser.hpp"
#include "nrq/cycles.hpp"
#include "nrq/error.hpp"
#include "nrq/interference.hpp"
#include "nrq/newton.hpp"
#include "nrq/qops.hpp"

namespace nrq::cli {

using nlohmann::json;

namespace {

const char* state_name(OrbitState s) {
  switch (s) {
    case OrbitState::Running: return "running";
    case OrbitState::Converged: return "converged";
    case OrbitState::PoleHit: return "pole";
    case OrbitState::Overflowed: return "overflow";
  }
  return "unknown";
}

json peaks_json(const std::vector<Peak>& peaks) {
  json a = json::array();
  for (const Peak& p : peaks)
    a.push_back({{"center", p.center}, {"height", p.height}, {"prominence", p.prominence},
                 {"half_width", p.half_width}});
  return a;
}

json density_summary(const EmpiricalDensity& d) {
  return {{"total", d.total()},
          {"in_range", d.in_range_total()},
          {"below", d.below_count()},
          {"above", d.above_count()}};
}

// Chains run concurrently; the merge below walks them in index order.
template <class Fn>
DensityRun run_chains(std::size_t chains, Fn chain) {
  std::vector<DensityRun> runs(chains, DensityRun{EmpiricalDensity(0.0, 1.0, 2), 0, 0.0});
  if (chains == 1) {
    runs[0] = chain(0);
  } else {
    std::vector<std::exception_ptr> errors(chains);
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < chains; ++i)
      threads.emplace_back([&, i] {
        try {
          runs[i] = chain(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    for (auto& t : threads) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  DensityRun merged = runs[0];
  for (std::size_t i = 1; i < chains; ++i) {
    merged.density.merge(runs[i].density);
    merged.restarts += runs[i].restarts;
  }
  merged.last_iterate = runs.back().last_iterate;
  return merged;
}

std::string density_output(const RunConfig& c, const EmpiricalDensity& d, const std::vector<Peak>& peaks,
                           const std::string& title) {
  if (*c.format == OutputFormat::Csv) return emit_csv(d);
  SvgOptions options;
  options.title = title;
  if (c.overlay && *c.overlay) options.overlay = cauchy_density;
  return emit_svgdata(d, peaks, options);
}

struct Check {
  std::string name;
  double value;
  double tol;
};

json ops_check(std::size_t n, double spacing, double mass) {
  using namespace qops;
  const Grid grid(n, spacing);
  const NaturalUnits units{.mass_scale = mass};
  std::vector<Check> checks;
  const auto worst_over_modes = [&](auto residual) {
    double w = 0.0;
    for (std::size_t m = 0; m < n; ++m) w = std::max(w, residual(m));
    return w;
  };

  const LinearOp t = shift_operator(grid);
  checks.push_back({"shift_unitarity", t.unitary_residual(), kOperatorTol});
  const auto dim = static_cast<Eigen::Index>(n);
  checks.push_back({"shift_power_identity",
                    (t.power(static_cast<unsigned>(n)).matrix() - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff(),
                    kOperatorTol});
  checks.push_back({"shift_eigenpairs", worst_over_modes([&](std::size_t m) {
                      return eigenpair_residual(t, fourier_eigenstate(grid, m), shift_eigenvalue(grid, m));
                    }),
                    kOperatorTol});

  const LinearOp omega = frequency_operator(grid);
  const LinearOp k = wavevector_operator(grid);
  checks.push_back({"frequency_eigenpairs", worst_over_modes([&](std::size_t m) {
                      return eigenpair_residual(omega, fourier_eigenstate(grid, m), frequency_eigenvalue(grid, m));
                    }),
                    kOperatorTol});
  checks.push_back({"wavevector_eigenpairs", worst_over_modes([&](std::size_t m) {
                      return eigenpair_residual(k, fourier_eigenstate(grid, m), wavevector_eigenvalue(grid, m));
                    }),
                    kOperatorTol});
  checks.push_back({"frequency_hermitian", omega.hermitian_residual(), kOperatorTol});
  checks.push_back({"wavevector_hermitian", k.hermitian_residual(), kOperatorTol});

  const double hop = hopping_for_mass(grid, units);
  const std::array<Complex, 1> hoppings{Complex(hop)};
  const std::size_t range = n > 2 ? 1 : 0;
  const LinearOp h = tight_binding_hamiltonian(
      grid, [&](double) { return range ? 2.0 * hop : 0.0; }, std::span(hoppings.data(), range));
  checks.push_back({"hamiltonian_hermitian", h.hermitian_residual(), kOperatorTol});

  const StateVector packet = gaussian_packet(grid, grid.extent() / 2, grid.extent() / 16, 0.3);
  double born = 0.0, born_fourier = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    born += born_probability(packet, StateVector::basis(n, m));
    born_fourier += born_probability(packet, fourier_eigenstate(grid, m));
  }
  checks.push_back({"born_sum_position", std::abs(born - 1.0), kNormTol});
  checks.push_back({"born_sum_fourier", std::abs(born_fourier - 1.0), kNormTol});

  const Propagator propagator(h, units);
  StateVector psi = packet;
  double drift = 0.0;
  for (int step = 0; step < 1000; ++step) {
    psi = propagator.evolve(psi, 0.1);
    drift = std::max(drift, std::abs(psi.squared_norm() - 1.0));
  }
  checks.push_back({"evolve_norm_drift", drift, kNormTol});

  checks.push_back({"klein_gordon_residual", klein_gordon_residual(grid, 1, mass, units), 1e-10});
  const DiracReport dirac = dirac_check(standard_dirac_representation(), {0.3, -0.4, 1.2}, mass, units);
  checks.push_back({"dirac_algebra", dirac.algebra_residual, kOperatorTol});
  const double energy = std::sqrt(0.3 * 0.3 + 0.4 * 0.4 + 1.2 * 1.2 + mass * mass);
  const std::array<double, 4> expected{-energy, -energy, energy, energy};
  double dirac_spread = 0.0;
  for (std::size_t i = 0; i < 4; ++i) dirac_spread = std::max(dirac_spread, std::abs(dirac.eigenvalues[i] - expected[i]));
  checks.push_back({"dirac_dispersion", dirac_spread, 1e-10});

  const LinearOp x = position_operator(grid);
  json report;
  report["n"] = n;
  report["spacing"] = spacing;
  json list = json::array();
  bool all = true;
  for (const Check& c : checks) {
    const bool pass = c.value <= c.tol;
    all = all && pass;
    list.push_back({{"name", c.name}, {"value", c.value}, {"tol", c.tol}, {"pass", pass}});
  }
  report["checks"] = list;
  report["uncertainty"] = {{"dx_dk", uncertainty_product(packet, x, k)},
                           {"robertson_bound", robertson_bound(packet, x, k)},
                           {"asserted", false}};
  report["status"] = all ? "ok" : "checks-failed";
  return report;
}

}  // namespace

RunOutput execute(const RunConfig& c) {
  const auto started = std::chrono::steady_clock::now();
  RunOutput out;
  RunReport& report = out.report;
  report.config = c;
  report.status = "ok";

  switch (*c.command) {
    case Command::Orbit: {
      IterationPolicy policy;
      policy.max_steps = static_cast<std::size_t>(*c.iters);
      const Orbit orbit = iterate_orbit(parse_polynomial(*c.poly), *c.x0, policy);
      out.data = emit_csv(orbit);
      report.status = state_name(orbit.status.state);
      report.summary = {{"iterates", orbit.iterates.size()}, {"stop_step", orbit.status.step}};
      break;
    }
    case Command::Density: {
      const Polynomial f = parse_polynomial(*c.poly);
      const Range range = *c.range;
      const DensityRun run = run_chains(*c.chains, [&](std::size_t i) {
        if (i == 0) return accumulate_density(f, *c.x0, *c.burnin, *c.iters, range, *c.bins, *c.seed);
        Rng start(derive_seed(*c.seed, 2 * i));
        return accumulate_density(f, start.uniform(range.lo, range.hi), *c.burnin, *c.iters, range, *c.bins,
                                  derive_seed(*c.seed, 2 * i + 1));
      });
      const std::vector<Peak> peaks = peak_detect(run.density);
      out.data = density_output(c, run.density, peaks, "orbit density of " + f.to_string());
      report.restart_count = run.restarts;
      report.summary = density_summary(run.density);
      report.summary["peaks"] = peaks_json(peaks);
      if (run.density.in_range_total() > 0)
        report.summary["l1_to_cauchy"] = density_distance(run.density, cauchy_density, DensityMetric::L1);
      break;
    }
    case Command::Interfere: {
      InterferenceConfig ic;
      ic.delta = *c.delta;
      ic.iterations = *c.iters;
      ic.burn_in = *c.burnin;
      ic.range = *c.range;
      ic.bins = *c.bins;
      const DensityRun run = run_chains(*c.chains, [&](std::size_t i) {
        return interference_experiment(ic, i == 0 ? *c.seed : derive_seed(*c.seed, 1000 + i));
      });
      const std::vector<Peak> peaks = peak_detect(run.density);
      out.data = density_output(c, run.density, peaks, fmt::format("two-well interference, delta={}", ic.delta));
      report.restart_count = run.restarts;
      report.summary = density_summary(run.density);
      report.summary["peaks"] = peaks_json(peaks);
      break;
    }
    case Command::Cycles: {
      const CycleSearch search = find_cycles(parse_polynomial(*c.poly), *c.period, *c.range, *c.grid_points);
      out.data = emit_csv(search);
      json cycles = json::array();
      for (const Cycle& cy : search.cycles) cycles.push_back({{"points", cy.points}, {"residual", cy.residual}});
      report.summary = {{"cycles", cycles}, {"pole_intervals", search.poles.size()}};
      break;
    }
    case Command::OpsCheck: {
      json checks = ops_check(*c.n, *c.spacing, *c.mass);
      report.status = checks["status"].get<std::string>();
      out.data = checks.dump(2) + "\n";
      break;
    }
    case Command::Dispersion: {
      const qops::Grid grid(*c.n, *c.spacing);
      std::vector<qops::BandPoint> band;
      if (*c.model == DispersionModel::KleinGordon) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
          const double k = qops::wavevector_eigenvalue(grid, j);
          band.push_back({k, qops::klein_gordon_dispersion(k, *c.mass, {})});
        }
        std::sort(band.begin(), band.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
      } else {
        const qops::NaturalUnits units{.mass_scale = *c.mass};
        const double hop = qops::hopping_for_mass(grid, units);
        const std::array<qops::Complex, 1> hoppings{qops::Complex(hop)};
        const std::size_t range = grid.size() > 2 ? 1 : 0;
        band = qops::plane_wave_band(
            grid,
            qops::tight_binding_hamiltonian(
                grid, [&](double) { return range ? 2.0 * hop : 0.0; }, std::span(hoppings.data(), range)));
      }
      out.data = emit_csv(band);
      report.summary = {{"points", band.size()}};
      break;
    }
  }
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

json to_json(const RunReport& r) {
  json artifacts = json::array();
  for (const Artifact& a : r.artifacts)
    artifacts.push_back({{"path", a.path}, {"sha256", a.sha256}, {"bytes", a.bytes}});
  return {{"config", to_json(r.config)},   {"wall_time_s", r.wall_time_s}, {"restart_count", r.restart_count},
          {"status", r.status},            {"summary", r.summary},         {"artifacts", artifacts}};
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1)
    throw Error(Errc::IoError, "SHA-256 failed");
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

void write_atomic(const std::string& path, std::string_view data) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += fmt::format(".tmp-{}", ::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, fmt::format("cannot open '{}' for writing", tmp.string()));
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error(Errc::IoError, fmt::format("write to '{}' failed", tmp.string()));
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw Error(Errc::IoError, fmt::format("cannot rename into '{}': {}", path, ec.message()));
  }
}

}  // namespace nrq::cli
