#pragma once

#include <string_view>

#include "nrq/polynomial.hpp"

namespace nrq::cli {

/// Parses and fully expands a polynomial in x.
///
///   expr    := term (('+' | '-') term)*
///   term    := factor ('*' factor)*
///   factor  := ('+' | '-') factor | power
///   power   := primary ('^' unsigned-integer)?
///   primary := decimal | 'x' | '(' expr ')'
///
/// Decimals may carry an exponent (1e-5). Arithmetic is exact over the
/// rationals; each coefficient is rounded to double once at the end, and
/// exactly cancelled leading terms are dropped.
///
/// Throws SyntaxError (with byte offset) on malformed input and
/// Error{DegreeZero} when the expansion is constant.
Polynomial parse_polynomial(std::string_view text);

}  // namespace nrq::cli
