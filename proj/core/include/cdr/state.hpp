#pragma once

// Density-matrix and protocol types shared by every engine.
//
// Basis order is fixed: |1> ground, |2> excited, |3> auxiliary spin state.
// Eigen storage is 0-based; the level-labelled accessors (`coherence`,
// `population`) take 1-based labels so call sites read like rho_12.

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace cdr {

using Complex = std::complex<double>;
using Matrix3 = Eigen::Matrix3cd;

inline constexpr double kPi = 3.14159265358979323846;

namespace tolerance {
inline constexpr double kHermiticity = 1e-12;
inline constexpr double kTrace = 1e-10;
inline constexpr double kMinEigenvalue = -1e-9;
}  // namespace tolerance

class DensityMatrix {
 public:
  /// Zero matrix; not a valid state until assigned.
  DensityMatrix() : m_(Matrix3::Zero()) {}
  explicit DensityMatrix(const Matrix3& m) : m_(m) {}

  const Matrix3& matrix() const noexcept { return m_; }
  Matrix3& matrix() noexcept { return m_; }

  /// 0-based element access.
  Complex operator()(int row, int col) const { return m_(row, col); }

  Complex trace() const { return m_.trace(); }
  double purity() const { return (m_ * m_).trace().real(); }

  friend bool operator==(const DensityMatrix& a, const DensityMatrix& b) {
    return a.m_ == b.m_;
  }

 private:
  Matrix3 m_;
};

DensityMatrix ground_state();

/// Pure state |level><level| for level in {1, 2, 3}.
DensityMatrix basis_state(int level);

enum class Invariant { Hermiticity, UnitTrace, PositiveSemidefinite };

std::string_view to_string(Invariant inv) noexcept;

struct Violation {
  Invariant invariant;
  double magnitude;  ///< measured deviation beyond the ideal value
};

struct ValidationReport {
  double hermiticity_error = 0.0;  ///< max |rho_ij - conj(rho_ji)|
  double trace_error = 0.0;        ///< |tr(rho) - 1|
  double min_eigenvalue = 0.0;     ///< of the Hermitian part
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::string describe() const;
};

ValidationReport validate(const DensityMatrix& rho);

/// rho_ij with 1-based level labels, i != j.
Complex coherence(const DensityMatrix& rho, int i, int j);

/// rho_ii with a 1-based level label.
double population(const DensityMatrix& rho, int i);

double max_element_distance(const DensityMatrix& a, const DensityMatrix& b);

enum class Channel { Optical12, Control23 };

std::string_view to_string(Channel ch) noexcept;

/// One square drive segment. `duration == 0` is an instantaneous hard pulse.
struct Pulse {
  Channel channel = Channel::Optical12;
  double area = 0.0;     ///< radians
  double t_start = 0.0;  ///< seconds
  double duration = 0.0; ///< seconds

  double t_end() const noexcept { return t_start + duration; }
  bool is_hard() const noexcept { return duration == 0.0; }
  /// Constant Rabi frequency area/duration; zero for hard pulses.
  double rabi_frequency() const noexcept {
    return duration > 0.0 ? area / duration : 0.0;
  }

  friend bool operator==(const Pulse&, const Pulse&) = default;
};

/// Validated, time-ordered list of pulses plus the observation window end.
/// Throws cdr::Error on construction if any invariant fails.
class PulseSequence {
 public:
  PulseSequence() = default;
  PulseSequence(std::vector<Pulse> pulses, double t_end);

  const std::vector<Pulse>& pulses() const noexcept { return pulses_; }
  double t_end() const noexcept { return t_end_; }
  bool empty() const noexcept { return pulses_.empty(); }

  bool all_hard() const noexcept;
  bool all_finite() const noexcept;
  /// Shortest finite duration; 0 if there is none.
  double shortest_duration() const noexcept;

  friend bool operator==(const PulseSequence&, const PulseSequence&) = default;

 private:
  std::vector<Pulse> pulses_;
  double t_end_ = 0.0;
};

/// One ensemble member. Detunings are in rad/s, decay rates in 1/s.
struct AtomParams {
  double delta = 0.0;    ///< optical detuning of |2>
  double delta_s = 0.0;  ///< detuning of |3> (spin inhomogeneity)
  std::array<double, 3> gamma{0.0, 0.0, 0.0};

  friend bool operator==(const AtomParams&, const AtomParams&) = default;
};

struct TrajectoryPoint {
  double time = 0.0;
  DensityMatrix rho;
  /// Index of the pulse that just acted, or -1 for a plain sample.
  int pulse_index = -1;
};

using Trajectory = std::vector<TrajectoryPoint>;

/// Throws InvalidArgument on negative or non-finite parameters.
void check(const AtomParams& atom);

}  // namespace cdr
