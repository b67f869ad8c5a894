#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cdr {

/// Machine-readable failure categories. `to_string` yields the stable
/// upper-snake identifiers used in CLI diagnostics.
enum class ErrorCode {
  InvalidArgument,
  UnknownName,
  SyntaxError,
  UnknownChannel,
  OverlappingPulses,
  UnsortedSequence,
  MissingField,
  NonFiniteValue,
  IoError,
  HardPulseOnly,
  FinitePulseOnly,
  StepTooCoarse,
  NonFiniteResult,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cdr
