#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

#include "nrq/polynomial.hpp"

namespace nrq {

using Rational = boost::multiprecision::cpp_rational;

/// Polynomial over the rationals. Used to expand products and powers without
/// rounding; conversion to Polynomial rounds each coefficient exactly once.
class ExactPolynomial {
 public:
  ExactPolynomial() = default;
  static ExactPolynomial constant(Rational c);
  static ExactPolynomial monomial(Rational c, int power);

  /// Coefficients in ascending degree order, trailing zeros removed.
  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }

  ExactPolynomial& operator+=(const ExactPolynomial& rhs);
  ExactPolynomial& operator-=(const ExactPolynomial& rhs);
  friend ExactPolynomial operator+(ExactPolynomial a, const ExactPolynomial& b) {
    return a += b;
  }
  friend ExactPolynomial operator-(ExactPolynomial a, const ExactPolynomial& b) {
    return a -= b;
  }
  friend ExactPolynomial operator*(const ExactPolynomial& a,
                                   const ExactPolynomial& b);
  ExactPolynomial operator-() const;
  ExactPolynomial pow(unsigned exponent) const;

  /// Throws Error{InvalidArgument} when the degree is below one.
  Polynomial to_polynomial() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

}  // namespace nrq
