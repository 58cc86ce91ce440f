#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sforge {

enum class ErrorCode {
  InvalidInput,
  ParseError,
  NonIntegerBalance,
  NoNonlinearTerm,
  AlphaZero,
  DegenerateAmplitude,
  DegenerateDirection,
  LambdaZero,
  ZeroIntegrationConstants,
  CaseMismatch,
  SingularPath,
  NoSolutionFound,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonIntegerBalance: return "NonIntegerBalance";
    case ErrorCode::NoNonlinearTerm: return "NoNonlinearTerm";
    case ErrorCode::AlphaZero: return "AlphaZero";
    case ErrorCode::DegenerateAmplitude: return "DegenerateAmplitude";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::LambdaZero: return "LambdaZero";
    case ErrorCode::ZeroIntegrationConstants: return "ZeroIntegrationConstants";
    case ErrorCode::CaseMismatch: return "CaseMismatch";
    case ErrorCode::SingularPath: return "SingularPath";
    case ErrorCode::NoSolutionFound: return "NoSolutionFound";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sforge
