#pragma once

// Reference implementations used only to check the library. None of them
// share code with src/.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace oracle {

using High = boost::multiprecision::cpp_dec_float_50;

inline High sqrt2() { return boost::multiprecision::sqrt(High(2)); }

// Root of f in [a, b] with f(a) f(b) < 0, narrowed until a and b are
// adjacent doubles.
inline double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (;;) {
    const double m = a + (b - a) / 2;
    if (m == a || m == b) return std::fabs(f(a)) < std::fabs(f(b)) ? a : b;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
}

// Every sign change of f on a uniform scan of [lo, hi], refined by bisection.
inline std::vector<double> all_roots(const std::function<double(double)>& f, double lo, double hi,
                                     int scan = 10000) {
  std::vector<double> roots;
  double prev_x = lo, prev = f(lo);
  for (int i = 1; i <= scan; ++i) {
    const double x = lo + (hi - lo) * i / scan;
    const double fx = f(x);
    if ((prev < 0) != (fx < 0)) roots.push_back(bisect(f, prev_x, x));
    prev_x = x;
    prev = fx;
  }
  return roots;
}

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol, int depth) {
  const double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15 * tol)
    return left + right + (left + right - whole) / 15;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  return simpson_step(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, 60);
}

// Cauchy draws from the standard library's distribution, not from nrq::Rng.
inline std::vector<double> cauchy_samples(std::size_t n, unsigned long long seed) {
  std::mt19937_64 engine(seed);
  std::cauchy_distribution<double> dist(0.0, 1.0);
  std::vector<double> out(n);
  for (double& v : out) v = dist(engine);
  return out;
}

// Period-p cycles of the x^2 + 1 Newton map. With x = cot(theta) the map is
// theta -> 2 theta, so periodic points are cot(k pi / (2^p - 1)).
inline std::vector<double> cot_periodic_points(int period) {
  const long m = (1L << period) - 1;
  std::vector<double> pts;
  for (long k = 1; k < m; ++k) pts.push_back(1.0 / std::tan(std::numbers::pi * k / m));
  return pts;
}

}  // namespace oracle
