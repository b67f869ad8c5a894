#pragma once

// Inhomogeneously broadened ensemble: per-atom evolution on a symmetric
// detuning grid, the macroscopic polarization P(t) = sum_i w_i rho_12^(i)(t),
// and echo detection/classification.
//
// Sign convention: Im P < 0 at an echo peak is absorptive (same sign as the
// freshly absorbed data pulse), Im P > 0 is emissive.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "cdr/state.hpp"

namespace cdr::ensemble {

struct EnsembleSpec {
  double sigma = 2.0 * kPi * 1e6;  ///< Gaussian width, rad/s
  int n_atoms = 201;               ///< odd, so delta = 0 is on the grid
  double span = 5.0;               ///< grid half-width in units of sigma

  /// 1 / (40 * span * sigma / 2pi): 40 samples per period of the fastest atom.
  double default_time_step() const;
  /// Uniform detuning grids make P(t) periodic with period 2pi / spacing.
  double revival_period() const;
};

/// Throws InvalidArgument unless sigma > 0, n_atoms >= 3 odd, span >= 0.
void check(const EnsembleSpec& spec);

struct WeightedAtom {
  AtomParams atom;
  double weight = 0.0;
};

/// Uniform symmetric grid over [-span*sigma, +span*sigma] with normalized
/// Gaussian weights; mirrored atoms carry exactly opposite detunings.
std::vector<WeightedAtom> build_ensemble(const EnsembleSpec& spec);

enum class Engine { Hard, Ode };

struct SimulationOptions {
  Engine engine = Engine::Hard;
  /// ODE step; 0 picks min(sample spacing, shortest pulse / 100).
  double ode_dt = 0.0;
  /// Worker threads; 0 uses hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
};

/// Ensemble averages at each sample time.
struct EnsembleTrace {
  std::vector<double> times;
  std::vector<Complex> polarization;  ///< sum_i w_i rho_12
  std::vector<double> rho11;
  std::vector<double> rho22;
  std::vector<double> rho33;
};

/// Sample times 0, dt, 2dt, ... up to t_end.
std::vector<double> time_grid(double t_end, double dt);

EnsembleTrace simulate_ensemble(const PulseSequence& seq, const EnsembleSpec& spec,
                                std::span<const double> times,
                                const SimulationOptions& opts = {});

std::vector<Complex> simulate_polarization(const PulseSequence& seq,
                                           const EnsembleSpec& spec,
                                           std::span<const double> times,
                                           const SimulationOptions& opts = {});

/// Phase-accounting prediction of echo times. Tracks the slope
/// s = d(arg rho_12)/d(delta): zero at the data pulse (first Optical12 pulse),
/// growing at unit rate while the coherence sits on the optical transition,
/// negated by every odd-pi Optical12 pulse, and frozen between odd-pi Control23
/// pulses (coherence shelved in |3>). Every zero crossing of s from below,
/// up to t_end, is an echo. Empty when no rephasing pulse exists.
std::vector<double> predict_echo_times(const PulseSequence& seq);

struct EchoEvent {
  double time = 0.0;
  double amplitude = 0.0;  ///< |P| at the peak
  Complex value;           ///< P at the peak
  int im_sign = 0;         ///< +1 emissive, -1 absorptive
  std::string label;       ///< "E1", "E2" or "other"

  bool emissive() const noexcept { return im_sign > 0; }
};

struct EchoReport {
  std::vector<EchoEvent> events;
  std::vector<double> times;
  std::vector<Complex> trace;

  /// First event with the given label, or nullptr.
  const EchoEvent* find(const std::string& label) const;
};

/// Local maxima of |P| outside pulse intervals and above
/// threshold_fraction * max|P| (max taken outside pulse intervals). Labels come from predict_echo_times,
/// matched within three grid steps.
EchoReport detect_echoes(std::span<const double> times,
                         std::span<const Complex> polarization,
                         const PulseSequence& seq, double threshold_fraction = 0.5);

}  // namespace cdr::ensemble
