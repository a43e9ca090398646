#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dp5 {

enum class ErrorCode {
  NotPrime,
  TooLarge,
  DivisionByZero,
  ZeroForm,
  BudgetExceeded,
  NotInEffDual,
  InconsistentPairings,
  ParseError,
  PreconditionViolated,
  InconsistentH0,
  NonExactDivision,
  InternalAssertion,
  NegativePointCount,
  InvalidWeilData,
  TargetUnreachable,
  Diverges,
  NonUnit,
  DegenerateK,
  NonIntegralExponent,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroForm: return "ZeroForm";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotInEffDual: return "NotInEffDual";
    case ErrorCode::InconsistentPairings: return "InconsistentPairings";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InconsistentH0: return "InconsistentH0";
    case ErrorCode::NonExactDivision: return "NonExactDivision";
    case ErrorCode::InternalAssertion: return "InternalAssertion";
    case ErrorCode::NegativePointCount: return "NegativePointCount";
    case ErrorCode::InvalidWeilData: return "InvalidWeilData";
    case ErrorCode::TargetUnreachable: return "TargetUnreachable";
    case ErrorCode::Diverges: return "Diverges";
    case ErrorCode::NonUnit: return "NonUnit";
    case ErrorCode::DegenerateK: return "DegenerateK";
    case ErrorCode::NonIntegralExponent: return "NonIntegralExponent";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dp5
