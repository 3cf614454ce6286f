#include "nrq/pushforward.hpp"

#include "nrq/error.hpp"
#include "nrq/newton.hpp"
#include "nrq/rng.hpp"

namespace nrq {

SampleableDensity SampleableDensity::cauchy() {
  return {cauchy_density, cauchy_quantile};
}

SampleableDensity SampleableDensity::uniform(double lo, double hi) {
  if (!(lo < hi)) throw Error(Errc::InvalidRange, "uniform density requires lo < hi");
  return {[lo, hi](double y) { return y >= lo && y <= hi ? 1.0 / (hi - lo) : 0.0; },
          [lo, hi](double u) { return lo + (hi - lo) * u; }};
}

SampleableDensity SampleableDensity::point_mass(double at) {
  return {[](double) { return 0.0; }, [at](double) { return at; }};
}

Pushforward pushforward(const Polynomial& f, const SampleableDensity& density,
                        std::uint64_t samples, std::uint64_t seed, Range window,
                        std::size_t bins) {
  Pushforward out{EmpiricalDensity(window.lo, window.hi, bins),
                  EmpiricalDensity(window.lo, window.hi, bins), 0};
  Rng rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    // (0, 1): the zero draw would map to an infinite quantile.
    double u = rng.uniform();
    while (u == 0.0) u = rng.uniform();
    const double x = density.quantile(u);
    out.before.add(x);
    if (auto y = try_newton_step(f, x))
      out.after.add(*y);
    else
      ++out.dropped;
  }
  return out;
}

double pushforward_residual(const Polynomial& f, const SampleableDensity& density,
                            std::uint64_t samples, std::uint64_t seed, Range window,
                            std::size_t bins) {
  const Pushforward pf = pushforward(f, density, samples, seed, window, bins);
  return density_distance(pf.after, density.pdf, DensityMetric::L1);
}

}  // namespace nrq
