#include "nrq/error.hpp"

namespace nrq {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DerivativeZero: return "DerivativeZero";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InvalidRange: return "InvalidRange";
    case Errc::PoleInCycleSearch: return "PoleInCycleSearch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonHermitianInput: return "NonHermitianInput";
    case Errc::HoppingRangeTooLarge: return "HoppingRangeTooLarge";
    case Errc::BadRepresentation: return "BadRepresentation";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::DegreeZero: return "DegreeZero";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace nrq
