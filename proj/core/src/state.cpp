#include "cdr/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cdr/error.hpp"

namespace cdr {

DensityMatrix ground_state() { return basis_state(1); }

DensityMatrix basis_state(int level) {
  if (level < 1 || level > 3) {
    throw Error(ErrorCode::InvalidArgument,
                "level must be 1, 2 or 3, got " + std::to_string(level));
  }
  Matrix3 m = Matrix3::Zero();
  m(level - 1, level - 1) = 1.0;
  return DensityMatrix(m);
}

std::string_view to_string(Invariant inv) noexcept {
  switch (inv) {
    case Invariant::Hermiticity: return "hermiticity";
    case Invariant::UnitTrace: return "unit-trace";
    case Invariant::PositiveSemidefinite: return "positive-semidefinite";
  }
  return "unknown";
}

std::string ValidationReport::describe() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t k = 0; k < violations.size(); ++k) {
    if (k) os << "; ";
    os << to_string(violations[k].invariant) << " violated by "
       << violations[k].magnitude;
  }
  return os.str();
}

ValidationReport validate(const DensityMatrix& rho) {
  const Matrix3& m = rho.matrix();
  ValidationReport report;

  report.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
  report.trace_error = std::abs(m.trace() - Complex(1.0, 0.0));

  // Eigenvalues of the Hermitian part; a grossly non-Hermitian input is
  // already flagged above.
  const Matrix3 herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix3> solver(herm, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues().minCoeff();

  if (!(report.hermiticity_error <= tolerance::kHermiticity)) {
    report.violations.push_back({Invariant::Hermiticity, report.hermiticity_error});
  }
  if (!(report.trace_error <= tolerance::kTrace)) {
    report.violations.push_back({Invariant::UnitTrace, report.trace_error});
  }
  if (!(report.min_eigenvalue >= tolerance::kMinEigenvalue)) {
    report.violations.push_back(
        {Invariant::PositiveSemidefinite, -report.min_eigenvalue});
  }
  return report;
}

namespace {

void check_level(int level) {
  if (level < 1 || level > 3) {
    throw Error(ErrorCode::InvalidArgument,
                "level index out of range: " + std::to_string(level));
  }
}

}  // namespace

Complex coherence(const DensityMatrix& rho, int i, int j) {
  check_level(i);
  check_level(j);
  if (i == j) {
    throw Error(ErrorCode::InvalidArgument,
                "coherence needs distinct levels, got " + std::to_string(i) +
                    " twice");
  }
  return rho(i - 1, j - 1);
}

double population(const DensityMatrix& rho, int i) {
  check_level(i);
  return rho(i - 1, i - 1).real();
}

double max_element_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

std::string_view to_string(Channel ch) noexcept {
  switch (ch) {
    case Channel::Optical12: return "optical12";
    case Channel::Control23: return "control23";
  }
  return "unknown";
}

PulseSequence::PulseSequence(std::vector<Pulse> pulses, double t_end)
    : pulses_(std::move(pulses)), t_end_(t_end) {
  if (!std::isfinite(t_end_)) {
    throw Error(ErrorCode::NonFiniteValue, "t_end is not finite");
  }
  double last_end = 0.0;
  for (std::size_t k = 0; k < pulses_.size(); ++k) {
    const Pulse& p = pulses_[k];
    const std::string where = "pulse " + std::to_string(k);
    if (!std::isfinite(p.area) || !std::isfinite(p.t_start) ||
        !std::isfinite(p.duration)) {
      throw Error(ErrorCode::NonFiniteValue, where + " has a non-finite field");
    }
    if (p.t_start < 0.0) {
      throw Error(ErrorCode::InvalidArgument, where + " starts before t = 0");
    }
    if (p.duration < 0.0) {
      throw Error(ErrorCode::InvalidArgument, where + " has negative duration");
    }
    if (k > 0) {
      const Pulse& prev = pulses_[k - 1];
      if (p.t_start < prev.t_start) {
        throw Error(ErrorCode::UnsortedSequence,
                    where + " starts before pulse " + std::to_string(k - 1));
      }
      if (p.t_start < prev.t_end()) {
        throw Error(ErrorCode::OverlappingPulses,
                    where + " overlaps pulse " + std::to_string(k - 1));
      }
    }
    last_end = std::max(last_end, p.t_end());
  }
  if (t_end_ < last_end) {
    throw Error(ErrorCode::InvalidArgument,
                "t_end precedes the end of the last pulse");
  }
}

bool PulseSequence::all_hard() const noexcept {
  return std::all_of(pulses_.begin(), pulses_.end(),
                     [](const Pulse& p) { return p.is_hard(); });
}

bool PulseSequence::all_finite() const noexcept {
  return std::none_of(pulses_.begin(), pulses_.end(),
                      [](const Pulse& p) { return p.is_hard(); });
}

double PulseSequence::shortest_duration() const noexcept {
  double shortest = 0.0;
  for (const Pulse& p : pulses_) {
    if (p.duration > 0.0 && (shortest == 0.0 || p.duration < shortest)) {
      shortest = p.duration;
    }
  }
  return shortest;
}

void check(const AtomParams& atom) {
  if (!std::isfinite(atom.delta) || !std::isfinite(atom.delta_s)) {
    throw Error(ErrorCode::NonFiniteValue, "atom detuning is not finite");
  }
  for (double g : atom.gamma) {
    if (!std::isfinite(g) || g < 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "decay rates must be finite and non-negative");
    }
  }
}

}  // namespace cdr
