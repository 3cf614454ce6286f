#include "nrq/polynomial.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "nrq/error.hpp"
#include "nrq/exact_polynomial.hpp"

namespace nrq {

namespace {

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.size() < 2)
    throw Error(Errc::InvalidArgument, "polynomial degree must be at least 1");
  for (double c : coeffs_)
    if (!std::isfinite(c))
      throw Error(Errc::InvalidArgument, "polynomial coefficient is not finite");
  if (coeffs_.back() == 0.0)
    throw Error(Errc::InvalidArgument, "leading coefficient is zero");

  deriv_.resize(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    deriv_[k - 1] = static_cast<double>(k) * coeffs_[k];
  numer_.resize(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    numer_[k] = (static_cast<double>(k) - 1.0) * coeffs_[k];
}

std::string Polynomial::to_string() const {
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    double c = coeffs_[k];
    if (c == 0.0) continue;
    bool negative = std::signbit(c);
    double mag = std::fabs(c);
    if (!out.empty())
      out += negative ? '-' : '+';
    else if (negative)
      out += '-';

    if (k == 0) {
      out += shortest(mag);
      continue;
    }
    if (mag != 1.0) out += shortest(mag) + "*";
    out += 'x';
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

Polynomial interference_polynomial(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw Error(Errc::InvalidArgument, "interference delta must be positive");
  const Rational d(delta);
  const auto x = ExactPolynomial::monomial(1, 1);
  const auto c = [](const Rational& v) { return ExactPolynomial::constant(v); };
  auto left = x * x + c(d);
  auto shifted = x - c(3);
  auto right = shifted * shifted + c(d);
  return (left * right).to_polynomial();
}

}  // namespace nrq
