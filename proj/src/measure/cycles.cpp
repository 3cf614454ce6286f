#include "nrq/cycles.hpp"

#include <algorithm>
#include <cmath>

#include "nrq/error.hpp"
#include "nrq/newton.hpp"

namespace nrq {

std::optional<double> newton_power(const Polynomial& f, double x,
                                   std::size_t count) noexcept {
  for (std::size_t i = 0; i < count; ++i) {
    auto next = try_newton_step(f, x);
    if (!next || !std::isfinite(*next)) return std::nullopt;
    x = *next;
  }
  return x;
}

namespace {

struct Bracket {
  double a, b;
  double ga, gb;
};

enum class Refined { Root, Pole };

class CycleFinder {
 public:
  CycleFinder(const Polynomial& f, std::size_t period) : f_(f), period_(period) {}

  std::optional<double> g(double x) const {
    auto y = newton_power(f_, x, period_);
    if (!y) return std::nullopt;
    return *y - x;
  }

  // Bisect down to adjacent doubles; returns the better endpoint.
  std::pair<Refined, double> refine(Bracket br) const {
    for (int it = 0; it < 2000; ++it) {
      const double mid = br.a + 0.5 * (br.b - br.a);
      if (mid <= br.a || mid >= br.b) break;
      auto gm = g(mid);
      if (!gm) return {Refined::Pole, mid};
      if (*gm == 0.0) return {Refined::Root, mid};
      if (std::signbit(*gm) == std::signbit(br.ga)) {
        br.a = mid;
        br.ga = *gm;
      } else {
        br.b = mid;
        br.gb = *gm;
      }
    }
    const double x = std::fabs(br.ga) <= std::fabs(br.gb) ? br.a : br.b;
    const double gx = std::min(std::fabs(br.ga), std::fabs(br.gb));
    return {gx <= kCycleResidualTol ? Refined::Root : Refined::Pole, x};
  }

  // Builds the orbit through x if it is a cycle of exact period.
  std::optional<Cycle> make_cycle(double x) const {
    for (std::size_t q = 1; q < period_; ++q) {
      if (period_ % q != 0) continue;
      auto y = newton_power(f_, x, q);
      if (y && std::fabs(*y - x) <= kCycleDistinctTol) return std::nullopt;
    }

    Cycle c;
    c.period = period_;
    c.points.reserve(period_);
    double p = x;
    for (std::size_t i = 0; i < period_; ++i) {
      c.points.push_back(p);
      auto next = try_newton_step(f_, p);
      if (!next) return std::nullopt;
      p = *next;
    }
    for (std::size_t i = 0; i < period_; ++i)
      for (std::size_t j = i + 1; j < period_; ++j)
        if (std::fabs(c.points[i] - c.points[j]) <= kCycleDistinctTol) return std::nullopt;

    for (double q : c.points) {
      auto back = newton_power(f_, q, period_);
      if (!back) return std::nullopt;
      c.residual = std::max(c.residual, std::fabs(*back - q));
    }
    if (!(c.residual <= kCycleResidualTol)) return std::nullopt;

    auto smallest = std::min_element(c.points.begin(), c.points.end());
    std::rotate(c.points.begin(), smallest, c.points.end());
    return c;
  }

 private:
  const Polynomial& f_;
  std::size_t period_;
};

}  // namespace

CycleSearch find_cycles(const Polynomial& f, std::size_t period, Range search,
                        std::size_t grid_points) {
  if (period < 1) throw Error(Errc::InvalidArgument, "cycle period must be >= 1");
  if (grid_points < 2) throw Error(Errc::InvalidArgument, "cycle search needs >= 2 grid points");
  if (!std::isfinite(search.lo) || !std::isfinite(search.hi) || !(search.lo < search.hi))
    throw Error(Errc::InvalidRange, "cycle search range requires lo < hi");

  const CycleFinder finder(f, period);
  const auto abscissa = [&](std::size_t i) {
    return search.lo + (search.hi - search.lo) * static_cast<double>(i) /
                           static_cast<double>(grid_points - 1);
  };

  std::vector<std::optional<double>> values(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) values[i] = finder.g(abscissa(i));

  CycleSearch out;
  std::vector<double> roots;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = abscissa(i);
    if (!values[i]) {
      out.poles.push_back({i > 0 ? abscissa(i - 1) : x,
                           i + 1 < grid_points ? abscissa(i + 1) : x});
      continue;
    }
    if (*values[i] == 0.0) {
      roots.push_back(x);
      continue;
    }
    if (i + 1 == grid_points || !values[i + 1] || *values[i + 1] == 0.0) continue;
    if (std::signbit(*values[i]) == std::signbit(*values[i + 1])) continue;

    const double xn = abscissa(i + 1);
    auto [kind, at] = finder.refine({x, xn, *values[i], *values[i + 1]});
    if (kind == Refined::Root)
      roots.push_back(at);
    else
      out.poles.push_back({x, xn});
  }

  for (double r : roots) {
    auto cycle = finder.make_cycle(r);
    if (!cycle) continue;
    const bool duplicate = std::any_of(out.cycles.begin(), out.cycles.end(), [&](const Cycle& c) {
      return std::fabs(c.points.front() - cycle->points.front()) <= kCycleDistinctTol;
    });
    if (!duplicate) out.cycles.push_back(std::move(*cycle));
  }
  std::sort(out.cycles.begin(), out.cycles.end(), [](const Cycle& a, const Cycle& b) {
    return a.points.front() < b.points.front();
  });
  return out;
}

}  // namespace nrq
