#include "nrq/orbit_stream.hpp"

#include <cmath>

#include "nrq/error.hpp"

namespace nrq {

OrbitStream::OrbitStream(const Polynomial& f, double x0, Range restart_range,
                         std::uint64_t seed, double overflow_bound,
                         double pole_epsilon)
    : f_(f),
      x_(x0),
      restart_range_(restart_range),
      rng_(seed),
      overflow_bound_(overflow_bound),
      pole_epsilon_(pole_epsilon) {
  if (!std::isfinite(x0)) throw Error(Errc::InvalidArgument, "orbit start must be finite");
  if (!(restart_range.lo < restart_range.hi))
    throw Error(Errc::InvalidRange, "restart range requires lo < hi");
}

double OrbitStream::advance() {
  auto next = try_newton_step(f_, x_, pole_epsilon_);
  if (next && std::fabs(*next) <= overflow_bound_) {
    x_ = *next;
  } else {
    x_ = rng_.uniform(restart_range_.lo, restart_range_.hi);
    ++restarts_;
  }
  ++index_;
  return x_;
}

void OrbitStream::skip(std::uint64_t steps) {
  for (std::uint64_t i = 0; i < steps; ++i) advance();
}

void OrbitStream::accumulate(std::uint64_t steps, EmpiricalDensity& into) {
  for (std::uint64_t i = 0; i < steps; ++i) into.add(advance());
}

DensityRun accumulate_density(const Polynomial& f, double x0, std::uint64_t n0,
                              std::uint64_t n, Range range, std::size_t bins,
                              std::uint64_t seed) {
  if (!(n > n0)) throw Error(Errc::InvalidArgument, "density needs n > n0");
  EmpiricalDensity density(range.lo, range.hi, bins);
  OrbitStream stream(f, x0, range, seed);
  stream.skip(n0);
  stream.accumulate(n - n0, density);
  return {std::move(density), stream.restarts(), stream.current()};
}

}  // namespace nrq
