#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace serrewt {

enum class ErrorCode {
  InvalidInput,
  SchemaError,
  InvariantError,
  InvalidEM,
  ChiMismatch,
  NoValidShift,
  MinimalityAmbiguous,
  NoMatchingIndex,
  InternalInvariantViolation,
  IntegralityViolation,
  RouteMismatch,
  NonUnitConstantTerm,
  TruncationInsufficient,
};

constexpr std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvariantError: return "InvariantError";
    case ErrorCode::InvalidEM: return "InvalidEM";
    case ErrorCode::ChiMismatch: return "ChiMismatch";
    case ErrorCode::NoValidShift: return "NoValidShift";
    case ErrorCode::MinimalityAmbiguous: return "MinimalityAmbiguous";
    case ErrorCode::NoMatchingIndex: return "NoMatchingIndex";
    case ErrorCode::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorCode::IntegralityViolation: return "IntegralityViolation";
    case ErrorCode::RouteMismatch: return "RouteMismatch";
    case ErrorCode::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorCode::TruncationInsufficient: return "TruncationInsufficient";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace serrewt
