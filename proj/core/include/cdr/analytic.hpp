#pragma once

// Closed-form stage solutions for a resonant atom with zero decay, starting
// from the ground state. On resonance only the accumulated pulse areas
// matter, so every function takes areas in radians and no times.
//
// Stage order of the controlled double-rephasing protocol:
//   D (data, optical) -> R1 (rephase, optical) -> C1, C2 (control, 2<->3)
//   -> R2 (second rephase, optical).

#include <string_view>
#include <utility>
#include <vector>

#include "cdr/state.hpp"

namespace cdr::analytic {

struct StageAreas {
  double phi_d = 0.0;
  double phi_r1 = 0.0;
  double phi_c1 = 0.0;
  double phi_c2 = 0.0;
  double phi_r2 = 0.0;

  /// (0.1 pi, pi, pi, pi, pi).
  static StageAreas canonical(double phi_d = 0.1 * kPi) {
    return {phi_d, kPi, kPi, kPi, kPi};
  }
};

DensityMatrix after_data(double phi_d);
DensityMatrix after_r1(double phi_d, double phi_r1);
/// Double rephasing without the control pair.
DensityMatrix after_r2_dr(double phi_d, double phi_r1, double phi_r2);
DensityMatrix after_c1(double phi_d, double phi_r1, double phi_c1);
DensityMatrix after_c2(double phi_d, double phi_r1, double phi_c1, double phi_c2);
/// Full protocol. rho_13 and rho_23 come from the same pure-state
/// amplitudes as the populations.
DensityMatrix after_r2_cdr(double phi_d, double phi_r1, double phi_c1,
                           double phi_c2, double phi_r2);

enum class Stage { Data, R1, C1, C2, R2 };

std::string_view to_string(Stage s) noexcept;

/// States after D, R1, C1, C2 and R2 of the controlled sequence.
std::vector<std::pair<Stage, DensityMatrix>> stage_chain(const StageAreas& areas);

}  // namespace cdr::analytic
