#include "nrq/exact_polynomial.hpp"

#include <algorithm>

#include "nrq/error.hpp"

namespace nrq {

ExactPolynomial ExactPolynomial::constant(Rational c) {
  return monomial(std::move(c), 0);
}

ExactPolynomial ExactPolynomial::monomial(Rational c, int power) {
  ExactPolynomial p;
  p.c_.assign(static_cast<std::size_t>(power) + 1, Rational(0));
  p.c_.back() = std::move(c);
  p.trim();
  return p;
}

void ExactPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ExactPolynomial& ExactPolynomial::operator+=(const ExactPolynomial& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), Rational(0));
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] += rhs.c_[i];
  trim();
  return *this;
}

ExactPolynomial& ExactPolynomial::operator-=(const ExactPolynomial& rhs) {
  return *this += -rhs;
}

ExactPolynomial ExactPolynomial::operator-() const {
  ExactPolynomial p = *this;
  for (auto& v : p.c_) v = -v;
  return p;
}

ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
  ExactPolynomial p;
  if (a.is_zero() || b.is_zero()) return p;
  p.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) p.c_[i + j] += a.c_[i] * b.c_[j];
  p.trim();
  return p;
}

ExactPolynomial ExactPolynomial::pow(unsigned exponent) const {
  ExactPolynomial result = constant(1);
  ExactPolynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial ExactPolynomial::to_polynomial() const {
  if (degree() < 1)
    throw Error(Errc::InvalidArgument, "polynomial degree must be at least 1");
  std::vector<double> coeffs(c_.size());
  std::transform(c_.begin(), c_.end(), coeffs.begin(),
                 [](const Rational& r) { return r.convert_to<double>(); });
  return Polynomial(std::move(coeffs));
}

}  // namespace nrq
