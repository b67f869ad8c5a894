#include "cdr/analytic.hpp"

#include <cmath>

namespace cdr::analytic {

namespace {

// Every stage leaves the resonant atom in a pure state
//   psi = (x, i*y, z)   with x, y, z real,
// so rho = psi psi^dagger has real populations, rho_12 = -i x y,
// rho_13 = x z and rho_23 = i y z.
struct Amplitudes {
  double x;
  double y;
  double z;
};

DensityMatrix from_amplitudes(const Amplitudes& a) {
  const Complex i(0.0, 1.0);
  const Complex psi[3] = {a.x, i * a.y, a.z};
  Matrix3 m;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      m(r, c) = psi[r] * std::conj(psi[c]);
    }
  }
  return DensityMatrix(m);
}

// Optical rotation of total area `optical` followed by a control rotation
// of total area `control`.
Amplitudes optical_then_control(double optical, double control) {
  const double a = 0.5 * optical;
  const double c = 0.5 * control;
  return {std::cos(a), std::sin(a) * std::cos(c), -std::sin(a) * std::sin(c)};
}

}  // namespace

DensityMatrix after_data(double phi_d) {
  return from_amplitudes(optical_then_control(phi_d, 0.0));
}

DensityMatrix after_r1(double phi_d, double phi_r1) {
  return from_amplitudes(optical_then_control(phi_d + phi_r1, 0.0));
}

DensityMatrix after_r2_dr(double phi_d, double phi_r1, double phi_r2) {
  return from_amplitudes(optical_then_control(phi_d + phi_r1 + phi_r2, 0.0));
}

DensityMatrix after_c1(double phi_d, double phi_r1, double phi_c1) {
  return from_amplitudes(optical_then_control(phi_d + phi_r1, phi_c1));
}

DensityMatrix after_c2(double phi_d, double phi_r1, double phi_c1, double phi_c2) {
  return from_amplitudes(optical_then_control(phi_d + phi_r1, phi_c1 + phi_c2));
}

DensityMatrix after_r2_cdr(double phi_d, double phi_r1, double phi_c1,
                           double phi_c2, double phi_r2) {
  const Amplitudes before =
      optical_then_control(phi_d + phi_r1, phi_c1 + phi_c2);
  // R2 mixes (x, i*y) by [[cos b, i sin b], [i sin b, cos b]]; z untouched.
  const double b = 0.5 * phi_r2;
  const double cb = std::cos(b);
  const double sb = std::sin(b);
  return from_amplitudes({cb * before.x - sb * before.y,
                          sb * before.x + cb * before.y, before.z});
}

std::string_view to_string(Stage s) noexcept {
  switch (s) {
    case Stage::Data: return "D";
    case Stage::R1: return "R1";
    case Stage::C1: return "C1";
    case Stage::C2: return "C2";
    case Stage::R2: return "R2";
  }
  return "?";
}

std::vector<std::pair<Stage, DensityMatrix>> stage_chain(const StageAreas& a) {
  return {
      {Stage::Data, after_data(a.phi_d)},
      {Stage::R1, after_r1(a.phi_d, a.phi_r1)},
      {Stage::C1, after_c1(a.phi_d, a.phi_r1, a.phi_c1)},
      {Stage::C2, after_c2(a.phi_d, a.phi_r1, a.phi_c1, a.phi_c2)},
      {Stage::R2, after_r2_cdr(a.phi_d, a.phi_r1, a.phi_c1, a.phi_c2, a.phi_r2)},
  };
}

}  // namespace cdr::analytic
