#pragma once

#include <cstdint>
#include <vector>

#include "nrq/density.hpp"
#include "nrq/orbit_stream.hpp"

namespace nrq {

struct InterferenceConfig {
  double delta = 0.01;
  std::uint64_t iterations = 201'000;  // n
  std::uint64_t burn_in = kDefaultBurnIn;  // n0
  Range range{-2.0, 5.0};
  std::size_t bins = 700;

  /// Throws Error{InvalidArgument} unless delta > 0, burn_in < iterations and
  /// bins >= 2; Error{InvalidRange} for an empty range.
  void validate() const;
};

/// Orbit density of the Newton map for (x^2 + delta)((x - 3)^2 + delta).
/// The start point is drawn from the seeded generator on config.range.
DensityRun interference_experiment(const InterferenceConfig& config,
                                   std::uint64_t seed);

struct Peak {
  double center = 0.0;
  double height = 0.0;      // smoothed density at the peak
  double prominence = 0.0;
  double half_width = 0.0;  // half width at half height of the smoothed curve
};

inline constexpr std::size_t kPeakSmoothingWindow = 5;
inline constexpr double kDefaultPeakProminence = 0.05;

/// Centered moving average over `window` bins, truncated at the edges.
std::vector<double> smooth(const std::vector<double>& values,
                           std::size_t window = kPeakSmoothingWindow);

/// Local maxima of the smoothed density with prominence >= min_prominence,
/// ordered by center. A flat top counts once, at its middle bin.
///
/// Prominence is the height minus the higher of the two flanking minima,
/// where each flanking minimum is the lowest value between the peak and the
/// nearest strictly higher sample on that side (or the window edge).
std::vector<Peak> peak_detect(const EmpiricalDensity& density,
                              double min_prominence = kDefaultPeakProminence);

/// Damped sinusoid sin(k d + phase) exp(-d / xi) for d >= 0, xi > 0.
double response_curve(double d, double k, double phase, double xi);

}  // namespace nrq
