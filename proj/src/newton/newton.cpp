#include "nrq/newton.hpp"

#include <algorithm>
#include <cmath>

#include "nrq/error.hpp"

namespace nrq {

void IterationPolicy::validate() const {
  if (max_steps < 1) throw Error(Errc::InvalidArgument, "max_steps must be >= 1");
  if (!(convergence_tol > 0.0))
    throw Error(Errc::InvalidArgument, "convergence_tol must be positive");
  if (!(overflow_bound > 0.0))
    throw Error(Errc::InvalidArgument, "overflow_bound must be positive");
  if (!(pole_epsilon > 0.0))
    throw Error(Errc::InvalidArgument, "pole_epsilon must be positive");
}

std::optional<double> try_newton_step(const Polynomial& f, double x,
                                      double pole_epsilon) noexcept {
  const double d = f.derivative(x);
  if (!(std::fabs(d) > pole_epsilon)) return std::nullopt;
  return f.newton_numerator(x) / d;
}

double newton_step(const Polynomial& f, double x, double pole_epsilon) {
  if (auto next = try_newton_step(f, x, pole_epsilon)) return *next;
  throw Error(Errc::DerivativeZero, "f'(x) vanishes: the Newton map has a pole");
}

bool overlap_converged(double prev, double next, double tol) noexcept {
  return std::fabs(next - prev) <= tol * (1.0 + std::fabs(prev));
}

Orbit iterate_orbit(const Polynomial& f, double x0, const IterationPolicy& policy) {
  policy.validate();
  if (!std::isfinite(x0))
    throw Error(Errc::InvalidArgument, "orbit start must be finite");

  Orbit orbit;
  orbit.start = x0;
  orbit.iterates.reserve(std::min<std::size_t>(policy.max_steps + 1, 1 << 16));
  orbit.iterates.push_back(x0);

  double x = x0;
  for (std::size_t step = 0; step < policy.max_steps; ++step) {
    auto next = try_newton_step(f, x, policy.pole_epsilon);
    if (!next) {
      orbit.status = {OrbitState::PoleHit, step, 0.0};
      return orbit;
    }
    if (!(std::fabs(*next) <= policy.overflow_bound)) {
      orbit.status = {OrbitState::Overflowed, step, 0.0};
      return orbit;
    }
    orbit.iterates.push_back(*next);
    if (overlap_converged(x, *next, policy.convergence_tol)) {
      orbit.status = {OrbitState::Converged, step + 1, *next};
      return orbit;
    }
    x = *next;
  }
  orbit.status = {OrbitState::Running, policy.max_steps, 0.0};
  return orbit;
}

MultiStartResult multi_start_solve(const Polynomial& f,
                                   std::span<const double> starts,
                                   const IterationPolicy& policy) {
  if (starts.empty())
    throw Error(Errc::InvalidArgument, "multi_start_solve needs at least one start");

  MultiStartResult result;
  for (double x0 : starts) {
    const Orbit orbit = iterate_orbit(f, x0, policy);
    if (orbit.status.state != OrbitState::Converged) {
      ++result.non_converged;
      continue;
    }
    const double v = orbit.status.value;
    auto it = std::find_if(result.roots.begin(), result.roots.end(),
                           [v](const RootCluster& c) {
                             return std::fabs(c.value - v) <= kRootClusterRadius;
                           });
    if (it != result.roots.end())
      ++it->count;
    else
      result.roots.push_back({v, 1});
  }
  std::sort(result.roots.begin(), result.roots.end(),
            [](const RootCluster& a, const RootCluster& b) { return a.value < b.value; });
  return result;
}

}  // namespace nrq
