#pragma once

#include <span>
#include <string>
#include <vector>

namespace nrq {

/// Real polynomial with coefficients in ascending degree order.
///
/// The derivative coefficients are formed once at construction from the
/// analytic rule d/dx x^k = k x^(k-1), so f and f' are always consistent.
/// So are the coefficients (k - 1) a_k of x f'(x) - f(x), the numerator of
/// the Newton map written as one fraction. All three are evaluated with
/// Horner's scheme.
class Polynomial {
 public:
  /// Throws Error{InvalidArgument} if the degree is below one or the leading
  /// coefficient is zero or any coefficient is non-finite.
  explicit Polynomial(std::vector<double> coefficients);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  std::span<const double> derivative_coefficients() const noexcept {
    return deriv_;
  }

  double value(double x) const noexcept { return horner(coeffs_, x); }
  double derivative(double x) const noexcept { return horner(deriv_, x); }
  /// x f'(x) - f(x)
  double newton_numerator(double x) const noexcept { return horner(numer_, x); }

  /// Canonical text form, e.g. "x^4-6*x^3+9.02*x^2-0.06*x+0.0901". Each
  /// coefficient is printed in shortest round-trip form so that parsing the
  /// result reproduces the coefficients exactly.
  std::string to_string() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  static double horner(std::span<const double> c, double x) noexcept {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  std::vector<double> coeffs_;
  std::vector<double> deriv_;
  std::vector<double> numer_;
};

/// (x^2 + delta)((x - 3)^2 + delta), expanded exactly from the binary value
/// of delta and rounded once per coefficient.
Polynomial interference_polynomial(double delta);

}  // namespace nrq
