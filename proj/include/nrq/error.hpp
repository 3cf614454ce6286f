#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nrq {

enum class Errc {
  DerivativeZero,
  InvalidArgument,
  InvalidRange,
  PoleInCycleSearch,
  IndexOutOfRange,
  DimensionMismatch,
  NonHermitianInput,
  HoppingRangeTooLarge,
  BadRepresentation,
  SyntaxError,
  DegreeZero,
  ConfigError,
  IoError,
};

const char* errc_name(Errc code) noexcept;

/// Base exception for every failure the library reports. The code is stable
/// and machine readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Parse failure with the byte offset of the offending character.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(Errc::SyntaxError, message), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace nrq
