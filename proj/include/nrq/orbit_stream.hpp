#pragma once

#include <cstdint>

#include "nrq/density.hpp"
#include "nrq/newton.hpp"
#include "nrq/polynomial.hpp"
#include "nrq/rng.hpp"

namespace nrq {

struct Range {
  double lo = -10.0;
  double hi = 10.0;
};

/// Endless Newton orbit. When a step hits a pole or leaves the overflow
/// bound, the orbit restarts from a point drawn uniformly from `restart_range`
/// with the stream's own seeded generator; the fresh point takes the place of
/// the failed iterate and the restart is counted.
class OrbitStream {
 public:
  OrbitStream(const Polynomial& f, double x0, Range restart_range,
              std::uint64_t seed, double overflow_bound = 1e300,
              double pole_epsilon = 1e-300);

  double current() const noexcept { return x_; }
  std::uint64_t index() const noexcept { return index_; }
  std::uint64_t restarts() const noexcept { return restarts_; }

  double advance();
  void skip(std::uint64_t steps);
  /// Advances `steps` times and bins every new iterate.
  void accumulate(std::uint64_t steps, EmpiricalDensity& into);

 private:
  Polynomial f_;
  double x_;
  Range restart_range_;
  Rng rng_;
  double overflow_bound_;
  double pole_epsilon_;
  std::uint64_t index_ = 0;
  std::uint64_t restarts_ = 0;
};

struct DensityRun {
  EmpiricalDensity density;
  std::uint64_t restarts = 0;
  double last_iterate = 0.0;  // x_n, for continuing the same orbit
};

inline constexpr std::uint64_t kDefaultBurnIn = 1000;
inline constexpr std::size_t kDefaultBins = 200;

/// Histogram of the iterates x_m with n0 < m <= n. Iterates up to x_{n0} are
/// burn-in and discarded. Restarts draw from `range`.
///
/// Throws Error{InvalidRange} if range.lo >= range.hi and
/// Error{InvalidArgument} unless n > n0 and bins >= 2.
DensityRun accumulate_density(const Polynomial& f, double x0, std::uint64_t n0,
                              std::uint64_t n, Range range, std::size_t bins,
                              std::uint64_t seed);

}  // namespace nrq
