#include "nrq/cli/polynomial_parser.hpp"

#include <cctype>
#include <string>

#include "nrq/error.hpp"
#include "nrq/exact_polynomial.hpp"

namespace nrq::cli {

namespace {

constexpr unsigned kMaxExponent = 64;
constexpr int kMaxDecimalExponent = 400;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExactPolynomial parse() {
    skip_space();
    if (at_end()) fail("empty polynomial");
    ExactPolynomial p = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(pos_, what + " at offset " + std::to_string(pos_));
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  ExactPolynomial expr() {
    ExactPolynomial acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  ExactPolynomial term() {
    ExactPolynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  ExactPolynomial factor() {
    if (accept('+')) return factor();
    if (accept('-')) return -factor();
    return power();
  }

  ExactPolynomial power() {
    ExactPolynomial base = primary();
    if (!accept('^')) return base;
    skip_space();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a non-negative integer exponent");
    const std::size_t start = pos_;
    unsigned e = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      e = e * 10 + static_cast<unsigned>(text_[pos_] - '0');
      ++pos_;
      if (e > kMaxExponent) {
        pos_ = start;
        fail("exponent too large");
      }
    }
    return base.pow(e);
  }

  ExactPolynomial primary() {
    skip_space();
    const char c = peek();
    if (c == 'x' || c == 'X') {
      ++pos_;
      return ExactPolynomial::monomial(1, 1);
    }
    if (c == '(') {
      ++pos_;
      ExactPolynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return ExactPolynomial::constant(number());
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected '") + c + "'");
  }

  // digits [. digits] [e [+-] digits], converted exactly.
  Rational number() {
    using boost::multiprecision::cpp_int;
    cpp_int mantissa = 0;
    int scale = 0;
    bool any_digit = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      mantissa = mantissa * 10 + (text_[pos_++] - '0');
      any_digit = true;
    }
    if (peek() == '.') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        mantissa = mantissa * 10 + (text_[pos_++] - '0');
        --scale;
        any_digit = true;
      }
    }
    if (!any_digit) fail("malformed number");
    if (peek() == 'e' || peek() == 'E') {
      ++pos_;
      int sign = 1;
      if (peek() == '+' || peek() == '-') sign = text_[pos_++] == '-' ? -1 : 1;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed exponent");
      int e = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        e = e * 10 + (text_[pos_++] - '0');
        if (e > kMaxDecimalExponent) fail("decimal exponent too large");
      }
      scale += sign * e;
    }
    const cpp_int ten_pow = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
    return scale >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text) {
  const ExactPolynomial p = Parser(text).parse();
  if (p.degree() < 1) throw Error(Errc::DegreeZero, "polynomial is constant");
  return p.to_polynomial();
}

}  // namespace nrq::cli
