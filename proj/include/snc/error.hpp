#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace snc {

enum class ErrorCode {
  ZeroDenominator,
  NonIntegerExponentAtNegativePoint,
  NonRationalPower,
  PoleAtZero,
  PoleAtOne,
  NotDivisible,
  ConditionStarViolation,
  ZeroMultiplicity,
  MismatchedD,
  EmptyStratum,
  NoModelTag,
  InvalidCenter,
  NegativeMultAtCenter,
  InvalidPair,
  PoleInSpecialization,
  NotDCanonical,
  NonPolynomialStringy,
  InvalidArgument,
  ParseError,
  ValidationError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NonIntegerExponentAtNegativePoint: return "NonIntegerExponentAtNegativePoint";
    case ErrorCode::NonRationalPower: return "NonRationalPower";
    case ErrorCode::PoleAtZero: return "PoleAtZero";
    case ErrorCode::PoleAtOne: return "PoleAtOne";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::ConditionStarViolation: return "ConditionStarViolation";
    case ErrorCode::ZeroMultiplicity: return "ZeroMultiplicity";
    case ErrorCode::MismatchedD: return "MismatchedD";
    case ErrorCode::EmptyStratum: return "EmptyStratum";
    case ErrorCode::NoModelTag: return "NoModelTag";
    case ErrorCode::InvalidCenter: return "InvalidCenter";
    case ErrorCode::NegativeMultAtCenter: return "NegativeMultAtCenter";
    case ErrorCode::InvalidPair: return "InvalidPair";
    case ErrorCode::PoleInSpecialization: return "PoleInSpecialization";
    case ErrorCode::NotDCanonical: return "NotDCanonical";
    case ErrorCode::NonPolynomialStringy: return "NonPolynomialStringy";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an `snc::Error` carrying a
/// machine-checkable code next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// what() without the code prefix
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace snc
