#pragma once

#include <stdexcept>
#include <string>

namespace geoconst {

/// Failure codes surfaced by the library. Input-side codes map to CLI exit 2,
/// computation-side codes to exit 3.
enum class Errc {
  DimensionTooSmall,
  DimensionMismatch,
  AsymmetricPolytope,
  DegeneratePolytope,
  BadExponent,
  InvalidParameter,
  ParseError,
  DegenerateDirection,
  NoSolution,
  AxiomViolation,
  InternalInconsistency,
  Unsupported,
};

inline const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::DimensionTooSmall:     return "DimensionTooSmall";
    case Errc::DimensionMismatch:     return "DimensionMismatch";
    case Errc::AsymmetricPolytope:    return "AsymmetricPolytope";
    case Errc::DegeneratePolytope:    return "DegeneratePolytope";
    case Errc::BadExponent:           return "BadExponent";
    case Errc::InvalidParameter:      return "InvalidParameter";
    case Errc::ParseError:            return "ParseError";
    case Errc::DegenerateDirection:   return "DegenerateDirection";
    case Errc::NoSolution:            return "NoSolution";
    case Errc::AxiomViolation:        return "AxiomViolation";
    case Errc::InternalInconsistency: return "InternalInconsistency";
    case Errc::Unsupported:           return "Unsupported";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// True for errors caused by bad user input (specs, parameters, files);
/// false for failures arising during computation.
inline bool is_input_error(Errc c) noexcept {
  switch (c) {
    case Errc::DimensionTooSmall:
    case Errc::DimensionMismatch:
    case Errc::AsymmetricPolytope:
    case Errc::DegeneratePolytope:
    case Errc::BadExponent:
    case Errc::InvalidParameter:
    case Errc::ParseError:
      return true;
    default:
      return false;
  }
}

}  // namespace geoconst
