#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsc {

enum class ErrorCode {
  ZeroDenominator,
  NegativeInput,
  DegenerateMap,
  NotTerminated,
  NotCoprime,
  NotFactorable,
  BudgetExceeded,
  IndexOutOfRange,
  SizeLimit,
  NonIntegerEntry,
  KMismatch,
  CorruptCheckpoint,
  ParseError,
  InvalidArgument,
  InvariantViolation,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can branch on the kind without parsing
// messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::DegenerateMap: return "DegenerateMap";
    case ErrorCode::NotTerminated: return "NotTerminated";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotFactorable: return "NotFactorable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::NonIntegerEntry: return "NonIntegerEntry";
    case ErrorCode::KMismatch: return "KMismatch";
    case ErrorCode::CorruptCheckpoint: return "CorruptCheckpoint";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace rsc
