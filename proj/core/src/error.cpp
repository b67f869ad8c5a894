#include "cdr/error.hpp"

namespace cdr {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::UnknownName: return "UNKNOWN_NAME";
    case ErrorCode::SyntaxError: return "SYNTAX_ERROR";
    case ErrorCode::UnknownChannel: return "UNKNOWN_CHANNEL";
    case ErrorCode::OverlappingPulses: return "OVERLAPPING_PULSES";
    case ErrorCode::UnsortedSequence: return "UNSORTED_SEQUENCE";
    case ErrorCode::MissingField: return "MISSING_FIELD";
    case ErrorCode::NonFiniteValue: return "NON_FINITE_VALUE";
    case ErrorCode::IoError: return "IO_ERROR";
    case ErrorCode::HardPulseOnly: return "HARD_PULSE_ONLY";
    case ErrorCode::FinitePulseOnly: return "FINITE_PULSE_ONLY";
    case ErrorCode::StepTooCoarse: return "STEP_TOO_COARSE";
    case ErrorCode::NonFiniteResult: return "NON_FINITE_RESULT";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace cdr
