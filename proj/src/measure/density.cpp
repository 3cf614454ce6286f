#include "nrq/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nrq/error.hpp"

namespace nrq {

EmpiricalDensity::EmpiricalDensity(double lo, double hi, std::size_t bins)
    : lo_(lo), hi_(hi), counts_(bins, 0) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw Error(Errc::InvalidRange, "histogram range requires lo < hi");
  if (bins < 2) throw Error(Errc::InvalidArgument, "histogram needs at least 2 bins");
}

EmpiricalDensity EmpiricalDensity::from_parts(double lo, double hi,
                                              std::vector<std::uint64_t> counts,
                                              std::uint64_t below,
                                              std::uint64_t above) {
  EmpiricalDensity d(lo, hi, counts.size());
  d.counts_ = std::move(counts);
  d.below_ = below;
  d.above_ = above;
  d.in_range_ = std::accumulate(d.counts_.begin(), d.counts_.end(), std::uint64_t{0});
  return d;
}

double EmpiricalDensity::bin_lower(std::size_t i) const noexcept {
  return lo_ + (hi_ - lo_) * static_cast<double>(i) / static_cast<double>(bins());
}

double EmpiricalDensity::bin_center(std::size_t i) const noexcept {
  return lo_ + (hi_ - lo_) * (static_cast<double>(i) + 0.5) / static_cast<double>(bins());
}

std::size_t EmpiricalDensity::bin_index(double x) const noexcept {
  if (!(x >= lo_) || x > hi_) return bins();
  auto i = static_cast<std::size_t>((x - lo_) / (hi_ - lo_) * static_cast<double>(bins()));
  return std::min(i, bins() - 1);
}

void EmpiricalDensity::add(double x) {
  if (std::isnan(x)) throw Error(Errc::InvalidArgument, "cannot bin NaN");
  if (x < lo_) {
    ++below_;
  } else if (x > hi_) {
    ++above_;
  } else {
    ++counts_[bin_index(x)];
    ++in_range_;
  }
}

void EmpiricalDensity::merge(const EmpiricalDensity& other) {
  if (other.lo_ != lo_ || other.hi_ != hi_ || other.bins() != bins())
    throw Error(Errc::InvalidArgument, "cannot merge histograms with different binning");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  below_ += other.below_;
  above_ += other.above_;
  in_range_ += other.in_range_;
}

double EmpiricalDensity::density(std::size_t i) const noexcept {
  if (in_range_ == 0) return 0.0;
  return static_cast<double>(counts_[i]) /
         (static_cast<double>(in_range_) * bin_width());
}

std::vector<double> EmpiricalDensity::densities() const {
  std::vector<double> out(bins());
  for (std::size_t i = 0; i < bins(); ++i) out[i] = density(i);
  return out;
}

double cauchy_density(double y) noexcept {
  return 1.0 / (std::numbers::pi * (y * y + 1.0));
}

double cauchy_cdf(double y) noexcept {
  return 0.5 + std::atan(y) / std::numbers::pi;
}

double cauchy_quantile(double u) noexcept {
  return std::tan(std::numbers::pi * (u - 0.5));
}

double density_distance(const EmpiricalDensity& emp,
                        const std::function<double(double)>& analytic,
                        DensityMetric metric) {
  if (emp.in_range_total() == 0)
    throw Error(Errc::InvalidArgument, "histogram has no in-range mass");

  using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  const std::size_t n = emp.bins();
  std::vector<double> bin_mass(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = emp.bin_lower(i);
    const double b = i + 1 == n ? emp.hi() : emp.bin_lower(i + 1);
    bin_mass[i] = Quad::integrate(analytic, a, b, 5, 1e-12);
  }
  const double z = std::accumulate(bin_mass.begin(), bin_mass.end(), 0.0);
  if (!(z > 0.0))
    throw Error(Errc::InvalidArgument, "analytic density has no mass on the window");

  const double width = emp.bin_width();
  const double total = static_cast<double>(emp.in_range_total());
  if (metric == DensityMetric::L1) {
    double l1 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      l1 += std::fabs(emp.density(i) - analytic(emp.bin_center(i)) / z) * width;
    return l1;
  }

  double ks = 0.0;
  double ecdf = 0.0;
  double cdf = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ecdf += static_cast<double>(emp.counts()[i]) / total;
    cdf += bin_mass[i] / z;
    ks = std::max(ks, std::fabs(ecdf - cdf));
  }
  return ks;
}

}  // namespace nrq
