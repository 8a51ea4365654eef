#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ailtl {

enum class ErrorCode {
  NonGroundFact,
  ReservedFunctor,
  UnboundBuiltinArg,
  UnboundNegation,
  TypeError,
  NonGroundAfterContext,
  NonGroundAction,
  TimestampRegression,
  UnresolvedPreference,
  NonGroundReify,
  CapExceeded,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

// Every engine-level failure is raised as an Error carrying its code.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

// Rejection of program or trace text. Line and column are 1-based and point
// at the first byte of the offending token.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line), column_(column), message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonGroundFact: return "NonGroundFact";
    case ErrorCode::ReservedFunctor: return "ReservedFunctor";
    case ErrorCode::UnboundBuiltinArg: return "UnboundBuiltinArg";
    case ErrorCode::UnboundNegation: return "UnboundNegation";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::NonGroundAfterContext: return "NonGroundAfterContext";
    case ErrorCode::NonGroundAction: return "NonGroundAction";
    case ErrorCode::TimestampRegression: return "TimestampRegression";
    case ErrorCode::UnresolvedPreference: return "UnresolvedPreference";
    case ErrorCode::NonGroundReify: return "NonGroundReify";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace ailtl
