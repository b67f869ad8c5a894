#pragma once

// Fixed-step RK4 integration of the three-level density-matrix equations of
// motion with square pulse envelopes.
//
// Rotating-frame Hamiltonian (hbar = 1):
//   H = -(1/2) [[0, Oj, 0], [Oj, 0, Ok], [0, Ok, 0]] + diag(0, delta, delta_s)
//   d(rho)/dt = -i [H, rho] - (1/2) {Gamma, rho},  Gamma = diag(gamma).

#include <functional>
#include <span>

#include "cdr/state.hpp"

namespace cdr::ode {

/// Instantaneous Rabi frequencies in rad/s.
struct DriveSample {
  double omega_j = 0.0;  ///< 1<->2 optical drive
  double omega_k = 0.0;  ///< 2<->3 control drive
};

using DriveFunction = std::function<DriveSample(double)>;

/// Right-hand side, written out element by element. Assumes rho is
/// Hermitian; the lower triangle is filled by conjugation.
Matrix3 rhs(const Matrix3& rho, const DriveSample& drive, const AtomParams& atom);

inline Matrix3 rhs(const DensityMatrix& rho, const DriveSample& drive,
                   const AtomParams& atom) {
  return rhs(rho.matrix(), drive, atom);
}

/// One classical RK4 step followed by rho <- (rho + rho^dagger)/2.
/// Throws NonFiniteResult if the step blows up.
DensityMatrix rk4_step(const DensityMatrix& rho, double t, double dt,
                       const DriveFunction& drive, const AtomParams& atom);

/// Square-envelope drive of `seq` at time t (pulse intervals half-open).
DriveSample drive_at(const PulseSequence& seq, double t);

struct IntegratorOptions {
  double dt = 0.0;  ///< maximum step; must not exceed shortest pulse / 100
};

/// Integrates rho0 from t = 0 and emits the state at every sample time
/// (ascending, within [0, t_end]). Steps are shortened so that pulse edges
/// and sample times fall exactly on step boundaries.
/// Errors: HardPulseOnly for zero-duration pulses, StepTooCoarse,
/// InvalidArgument for out-of-window samples.
Trajectory integrate_sequence(const DensityMatrix& rho0, const PulseSequence& seq,
                              const AtomParams& atom, const IntegratorOptions& opts,
                              std::span<const double> sample_times);

/// Convenience form sampling every `stride` steps of size dt, plus t_end.
Trajectory integrate_sequence(const DensityMatrix& rho0, const PulseSequence& seq,
                              const AtomParams& atom, double dt, int stride);

}  // namespace cdr::ode
