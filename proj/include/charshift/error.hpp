#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace charshift {

enum class ErrorCode {
  NotPrime,
  ReducibleModulus,
  DivisionByZero,
  EvenCharacteristic,
  SingularTraceMatrix,
  NotOddPrime,
  EvenModulus,
  NotSquareFree,
  EvenInput,
  UnsupportedParameters,
  DomainTooLarge,
  NonUnitPhase,
  NotBijective,
  DimensionMismatch,
  ShiftOutOfRange,
  ModulusTooLargeForM,
  DomainViolation,
  RetriesExhausted,
  NoValidConvergent,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map them to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::SingularTraceMatrix: return "SingularTraceMatrix";
    case ErrorCode::NotOddPrime: return "NotOddPrime";
    case ErrorCode::EvenModulus: return "EvenModulus";
    case ErrorCode::NotSquareFree: return "NotSquareFree";
    case ErrorCode::EvenInput: return "EvenInput";
    case ErrorCode::UnsupportedParameters: return "UnsupportedParameters";
    case ErrorCode::DomainTooLarge: return "DomainTooLarge";
    case ErrorCode::NonUnitPhase: return "NonUnitPhase";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ShiftOutOfRange: return "ShiftOutOfRange";
    case ErrorCode::ModulusTooLargeForM: return "ModulusTooLargeForM";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::NoValidConvergent: return "NoValidConvergent";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace charshift
