#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ckbound {

enum class ErrorCode {
  ZeroConstantTerm,
  ConstantTermNotOne,
  NonzeroConstantTerm,
  ZeroDenominatorConstant,
  OrderTooSmall,
  NotHyperbolic,
  InvalidN1,
  InvalidCurveData,
  NonIntegerExponent,
  NotPrime,
  NotFoundBelowCap,
  BudgetExceeded,
  MissingBadPrimeData,
  InvalidParams,
  MissingC1,
  MissingConstants,
  UnknownSuite,
  SchemaViolation,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::ConstantTermNotOne: return "ConstantTermNotOne";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::ZeroDenominatorConstant: return "ZeroDenominatorConstant";
    case ErrorCode::OrderTooSmall: return "OrderTooSmall";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::InvalidN1: return "InvalidN1";
    case ErrorCode::InvalidCurveData: return "InvalidCurveData";
    case ErrorCode::NonIntegerExponent: return "NonIntegerExponent";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotFoundBelowCap: return "NotFoundBelowCap";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::MissingBadPrimeData: return "MissingBadPrimeData";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::MissingC1: return "MissingC1";
    case ErrorCode::MissingConstants: return "MissingConstants";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
  }
  return "Unknown";
}

/// Domain error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ckbound
