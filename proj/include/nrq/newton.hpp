#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nrq/polynomial.hpp"

namespace nrq {

struct IterationPolicy {
  std::size_t max_steps = 1000;
  double convergence_tol = 1e-12;
  /// Orbits whose iterate magnitude exceeds this bound stop as Overflowed.
  double overflow_bound = 1e300;
  /// Threshold on |f'(x)| below which the map is treated as singular.
  double pole_epsilon = 1e-300;

  /// Throws Error{InvalidArgument} unless every bound is strictly positive.
  void validate() const;
};

/// x - f(x)/f'(x), evaluated as (x f'(x) - f(x)) / f'(x). Throws Error{DerivativeZero} when |f'(x)| <= pole_epsilon.
double newton_step(const Polynomial& f, double x, double pole_epsilon = 1e-300);

/// Non-throwing variant for hot loops; empty at a pole.
std::optional<double> try_newton_step(const Polynomial& f, double x,
                                      double pole_epsilon = 1e-300) noexcept;

/// Mixed absolute/relative overlap test |next - prev| <= tol * (1 + |prev|).
bool overlap_converged(double prev, double next, double tol) noexcept;

enum class OrbitState { Running, Converged, PoleHit, Overflowed };

/// `step` is the iterate index at which the orbit stopped: the converged
/// iterate, or the last recorded iterate from which no valid step exists.
struct OrbitStatus {
  OrbitState state = OrbitState::Running;
  std::size_t step = 0;
  double value = 0.0;  // limit for Converged, otherwise unused

  friend bool operator==(const OrbitStatus&, const OrbitStatus&) = default;
};

struct Orbit {
  double start = 0.0;
  std::vector<double> iterates;  // iterates[0] == start
  OrbitStatus status;

  friend bool operator==(const Orbit&, const Orbit&) = default;
};

/// Applies the Newton map from x0 until convergence, a pole, overflow, or
/// policy.max_steps steps. Failures are reported through Orbit::status.
Orbit iterate_orbit(const Polynomial& f, double x0, const IterationPolicy& policy);

struct RootCluster {
  double value = 0.0;  // representative: first endpoint that opened the cluster
  std::size_t count = 0;
};

struct MultiStartResult {
  std::vector<RootCluster> roots;  // sorted by value
  std::size_t non_converged = 0;
};

inline constexpr double kRootClusterRadius = 1e-6;

/// Runs one orbit per start and groups converged endpoints lying within
/// kRootClusterRadius of a cluster's representative.
MultiStartResult multi_start_solve(const Polynomial& f,
                                   std::span<const double> starts,
                                   const IterationPolicy& policy);

}  // namespace nrq
