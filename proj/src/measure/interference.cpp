#include "nrq/interference.hpp"

#include <algorithm>
#include <cmath>

#include "nrq/error.hpp"
#include "nrq/polynomial.hpp"
#include "nrq/rng.hpp"

namespace nrq {

void InterferenceConfig::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw Error(Errc::InvalidArgument, "interference delta must be positive");
  if (!(burn_in < iterations))
    throw Error(Errc::InvalidArgument, "burn-in must be smaller than the iteration count");
  if (!(range.lo < range.hi)) throw Error(Errc::InvalidRange, "range requires lo < hi");
  if (bins < 2) throw Error(Errc::InvalidArgument, "histogram needs at least 2 bins");
}

DensityRun interference_experiment(const InterferenceConfig& config, std::uint64_t seed) {
  config.validate();
  const Polynomial f = interference_polynomial(config.delta);
  // Start and restarts come from independent streams of the same seed.
  Rng start_rng(derive_seed(seed, 0));
  const double x0 = start_rng.uniform(config.range.lo, config.range.hi);
  return accumulate_density(f, x0, config.burn_in, config.iterations, config.range,
                            config.bins, derive_seed(seed, 1));
}

std::vector<double> smooth(const std::vector<double>& values, std::size_t window) {
  const std::size_t n = values.size();
  const std::size_t half = window / 2;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i >= half ? i - half : 0;
    const std::size_t b = std::min(n - 1, i + half);
    double sum = 0.0;
    for (std::size_t k = a; k <= b; ++k) sum += values[k];
    out[i] = sum / static_cast<double>(b - a + 1);
  }
  return out;
}

namespace {

// Lowest value walking from `from` in direction `step` until a sample above
// `height` or the edge.
double flank_minimum(const std::vector<double>& s, std::ptrdiff_t from,
                     std::ptrdiff_t step, double height) {
  double lowest = height;
  for (std::ptrdiff_t k = from; k >= 0 && k < static_cast<std::ptrdiff_t>(s.size()); k += step) {
    if (s[k] > height) break;
    lowest = std::min(lowest, s[k]);
  }
  return lowest;
}

// Abscissa where the curve first drops to `level` walking away from the peak.
double half_level_crossing(const EmpiricalDensity& d, const std::vector<double>& s,
                           std::ptrdiff_t from, std::ptrdiff_t step, double level) {
  const auto n = static_cast<std::ptrdiff_t>(s.size());
  std::ptrdiff_t prev = from;
  for (std::ptrdiff_t k = from + step; k >= 0 && k < n; k += step) {
    if (s[k] <= level) {
      const double t = (s[prev] - level) / (s[prev] - s[k]);
      const double xp = d.bin_center(prev);
      return xp + t * (d.bin_center(k) - xp);
    }
    prev = k;
  }
  return step < 0 ? d.lo() : d.hi();
}

}  // namespace

std::vector<Peak> peak_detect(const EmpiricalDensity& density, double min_prominence) {
  if (!(min_prominence >= 0.0))
    throw Error(Errc::InvalidArgument, "min_prominence must be non-negative");

  const std::vector<double> s = smooth(density.densities());
  const auto n = static_cast<std::ptrdiff_t>(s.size());
  std::vector<Peak> peaks;

  for (std::ptrdiff_t i = 1; i + 1 < n; ++i) {
    if (!(s[i] > s[i - 1])) continue;
    std::ptrdiff_t j = i;
    while (j + 1 < n && s[j + 1] == s[i]) ++j;
    if (j + 1 >= n || !(s[j + 1] < s[i])) {
      i = j;
      continue;
    }

    const double h = s[i];
    const double left = flank_minimum(s, i - 1, -1, h);
    const double right = flank_minimum(s, j + 1, +1, h);
    Peak p;
    p.center = density.bin_center(static_cast<std::size_t>((i + j) / 2));
    p.height = h;
    p.prominence = h - std::max(left, right);
    const double xl = half_level_crossing(density, s, i, -1, 0.5 * h);
    const double xr = half_level_crossing(density, s, j, +1, 0.5 * h);
    p.half_width = 0.5 * (xr - xl);
    if (p.prominence >= min_prominence) peaks.push_back(p);
    i = j;
  }
  return peaks;
}

double response_curve(double d, double k, double phase, double xi) {
  if (!(xi > 0.0)) throw Error(Errc::InvalidArgument, "response decay length must be positive");
  if (!(d >= 0.0)) throw Error(Errc::InvalidArgument, "response distance must be non-negative");
  return std::sin(k * d + phase) * std::exp(-d / xi);
}

}  // namespace nrq
