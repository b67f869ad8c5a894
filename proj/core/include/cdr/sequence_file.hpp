#pragma once

// JSON sequence files. Times are in microseconds, frequencies in Hz and
// pulse areas in units of pi:
//
//   {
//     "pulses": [
//       {"channel": "optical12", "area_pi": 0.1, "t_start": 0, "duration": 0},
//       ...
//     ],
//     "ensemble": {"sigma_hz": 1e6, "n_atoms": 201, "span": 5},
//     "grid": {"t_end": 50, "dt": 0.005}
//   }
//
// Required: "pulses" (may be empty) with channel, area_pi and t_start per
// pulse, and "grid.t_end". Defaults: duration 0, the ensemble defaults of
// EnsembleSpec, grid.dt = EnsembleSpec::default_time_step().

#include <string>
#include <string_view>

#include "cdr/ensemble.hpp"
#include "cdr/state.hpp"

namespace cdr::io {

struct GridConfig {
  double t_end = 0.0;  ///< seconds
  double dt = 0.0;     ///< seconds
};

struct SequenceConfig {
  PulseSequence sequence;
  ensemble::EnsembleSpec ensemble;
  GridConfig grid;
};

/// Errors (cdr::Error codes): SyntaxError (with line:column), UnknownChannel,
/// MissingField, OverlappingPulses, UnsortedSequence, InvalidArgument.
SequenceConfig parse_sequence_file(std::string_view text);

/// Reads and parses a file; IoError if it cannot be read.
SequenceConfig load_sequence_file(const std::string& path);

/// Inverse of parse_sequence_file (up to floating-point unit conversion).
std::string serialize_sequence(const SequenceConfig& config);

Channel parse_channel(std::string_view name);

}  // namespace cdr::io
