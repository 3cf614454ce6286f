#pragma once

#include <cstdint>
#include <functional>

#include "nrq/density.hpp"
#include "nrq/orbit_stream.hpp"
#include "nrq/polynomial.hpp"

namespace nrq {

/// A density that can be sampled by inverse CDF.
struct SampleableDensity {
  std::function<double(double)> pdf;
  std::function<double(double)> quantile;  // u in (0, 1)

  static SampleableDensity cauchy();
  static SampleableDensity uniform(double lo, double hi);
  /// Degenerate: every sample equals `at`; pdf is zero everywhere.
  static SampleableDensity point_mass(double at);
};

struct Pushforward {
  EmpiricalDensity before;
  EmpiricalDensity after;
  std::uint64_t dropped = 0;  // samples that landed on a pole of the map
};

/// Draws `samples` points from `density`, bins them, pushes each through one
/// Newton step and bins the images on the same window.
Pushforward pushforward(const Polynomial& f, const SampleableDensity& density,
                        std::uint64_t samples, std::uint64_t seed,
                        Range window = {}, std::size_t bins = kDefaultBins);

/// L1 distance between the pushed-forward histogram and density.pdf. Near
/// zero when the density is invariant under the map.
double pushforward_residual(const Polynomial& f,
                            const SampleableDensity& density,
                            std::uint64_t samples, std::uint64_t seed,
                            Range window = {}, std::size_t bins = kDefaultBins);

}  // namespace nrq
