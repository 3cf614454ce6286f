#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace nrq {

/// Fixed-width histogram over [lo, hi] with out-of-range mass tracked
/// separately. Bins are half-open [edge_i, edge_{i+1}) except the last, which
/// also holds x == hi.
///
/// Counts form a commutative monoid under merge(), so independent chains can
/// be accumulated separately and combined exactly.
class EmpiricalDensity {
 public:
  /// Throws Error{InvalidRange} unless lo < hi (both finite) and
  /// Error{InvalidArgument} when bins < 2.
  EmpiricalDensity(double lo, double hi, std::size_t bins);

  /// Rebuilds a histogram from stored parts (used when reading CSV).
  static EmpiricalDensity from_parts(double lo, double hi,
                                     std::vector<std::uint64_t> counts,
                                     std::uint64_t below, std::uint64_t above);

  /// Throws Error{InvalidArgument} for NaN.
  void add(double x);

  /// Throws Error{InvalidArgument} if the binnings differ.
  void merge(const EmpiricalDensity& other);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t bins() const noexcept { return counts_.size(); }
  double bin_width() const noexcept { return (hi_ - lo_) / bins(); }
  double bin_lower(std::size_t i) const noexcept;
  double bin_center(std::size_t i) const noexcept;

  /// Index of the bin holding x, or bins() when x is outside [lo, hi].
  std::size_t bin_index(double x) const noexcept;

  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t below_count() const noexcept { return below_; }
  std::uint64_t above_count() const noexcept { return above_; }
  std::uint64_t in_range_total() const noexcept { return in_range_; }
  std::uint64_t total() const noexcept { return in_range_ + below_ + above_; }

  /// counts[i] / (in_range_total * bin_width); zero when nothing is in range.
  double density(std::size_t i) const noexcept;
  std::vector<double> densities() const;

  friend bool operator==(const EmpiricalDensity&,
                         const EmpiricalDensity&) = default;

 private:
  double lo_;
  double hi_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t below_ = 0;
  std::uint64_t above_ = 0;
  std::uint64_t in_range_ = 0;
};

/// Standard Cauchy (Lorentzian) density 1 / (pi (1 + y^2)).
double cauchy_density(double y) noexcept;
double cauchy_cdf(double y) noexcept;
/// tan(pi (u - 1/2)) for u in (0, 1).
double cauchy_quantile(double u) noexcept;

enum class DensityMetric { L1, KolmogorovSmirnov };

/// Distance between a histogram and an analytic density restricted to the
/// histogram window [lo, hi].
///
/// The histogram is normalized over its in-range mass, so the analytic
/// density is conditioned on the same window: it is divided by its own mass
/// on [lo, hi], computed by Gauss-Kronrod quadrature bin by bin.
///   L1: sum_i |emp_i - g(center_i) / Z| * width
///   KS: max over bin edges of |ECDF - G(edge) / Z|
///
/// Throws Error{InvalidArgument} when the histogram has no in-range mass or
/// the analytic density has no positive mass on the window.
double density_distance(const EmpiricalDensity& emp,
                        const std::function<double(double)>& analytic,
                        DensityMetric metric);

}  // namespace nrq
