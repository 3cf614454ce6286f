#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nrq/orbit_stream.hpp"
#include "nrq/polynomial.hpp"

namespace nrq {

/// A periodic orbit of the Newton map with minimal period `period`.
/// Points are stored starting from the smallest, in orbit order.
struct Cycle {
  std::size_t period = 0;
  std::vector<double> points;
  double residual = 0.0;  // max |O^period(p) - p| over points
};

/// Subinterval of the search grid where g(x) = O^period(x) - x changes sign
/// across a pole of O^period rather than a root.
struct PoleInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct CycleSearch {
  std::vector<Cycle> cycles;  // sorted by first point
  std::vector<PoleInterval> poles;  // PoleInCycleSearch reports
};

inline constexpr double kCycleResidualTol = 1e-10;
inline constexpr double kCycleDistinctTol = 1e-9;

/// O^count(x); empty if an intermediate iterate lands on a pole or is
/// non-finite.
std::optional<double> newton_power(const Polynomial& f, double x,
                                   std::size_t count) noexcept;

/// Cycles of exact period `period` with at least one point in `search`.
///
/// Brackets sign changes of O^period(x) - x over `grid_points` equally spaced
/// abscissae, refines each bracket by bisection down to adjacent doubles, and
/// accepts it when the residual is at most kCycleResidualTol. Brackets that
/// straddle a pole are reported in CycleSearch::poles. Cycles equal up to
/// rotation are merged and orbits of a smaller period are dropped.
///
/// Throws Error{InvalidArgument} unless period >= 1 and grid_points >= 2, and
/// Error{InvalidRange} unless search.lo < search.hi.
CycleSearch find_cycles(const Polynomial& f, std::size_t period, Range search,
                        std::size_t grid_points);

}  // namespace nrq
