#pragma once

#include <iosfwd>
#include <string_view>

namespace cdr::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kIoError = 3,
};

/// Subcommands: figures, sweep, stages, echo, propagate, verify.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Parses an area such as "0.1pi", "pi/2", "3*pi" or "0.314" (radians).
/// Throws cdr::Error(InvalidArgument) on malformed input.
double parse_area_value(std::string_view text);

}  // namespace cdr::cli
