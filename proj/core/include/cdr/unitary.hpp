#pragma once

// Hard-pulse stage maps. Pulses are ideal resonant rotations (infinite Rabi
// frequency limit); detuning acts only during free evolution between pulses.

#include <span>
#include <vector>

#include "cdr/state.hpp"

namespace cdr::unitary {

/// 3x3 unitary acting on the (|1>, |2>, |3>) basis.
struct StageUnitary {
  Matrix3 matrix = Matrix3::Identity();

  /// max |U U^dagger - I|.
  double unitarity_error() const;
};

/// Rotation by `area` on the driven pair:
///   [[cos(area/2), i sin(area/2)], [i sin(area/2), cos(area/2)]]
/// embedded at (1,2) for Optical12 or (2,3) for Control23. This is
/// exp(-iHt) for the interaction Hamiltonian -(Omega/2)(|a><b| + h.c.).
StageUnitary pulse_unitary(Channel channel, double area);

/// diag(1, exp(-i delta dt), exp(-i delta_s dt)). Level 3 is a lower spin
/// state, so only the spin detuning survives in the two-laser rotating frame;
/// a coherence shelved in |3> stops accumulating optical phase.
StageUnitary free_evolution_unitary(const AtomParams& atom, double dt);

DensityMatrix apply_unitary(const DensityMatrix& rho, const StageUnitary& u);

/// Evolves rho0 through a hard-pulse sequence. Emits a point at every
/// requested sample time and one right after each pulse, in time order
/// (a sample coinciding with a pulse sees the post-pulse state).
/// Throws FinitePulseOnly if any pulse has nonzero duration.
Trajectory run_sequence_hard(const DensityMatrix& rho0, const PulseSequence& seq,
                             const AtomParams& atom,
                             std::span<const double> sample_times);

/// States at `sample_times` only (sorted ascending). Used by the ensemble
/// driver, which does not need the pulse-boundary points.
std::vector<DensityMatrix> sample_hard(const DensityMatrix& rho0,
                                       const PulseSequence& seq,
                                       const AtomParams& atom,
                                       std::span<const double> sample_times);

}  // namespace cdr::unitary
