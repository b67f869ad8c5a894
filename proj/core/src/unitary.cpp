#include "cdr/unitary.hpp"

#include <algorithm>
#include <cmath>

#include "cdr/error.hpp"

namespace cdr::unitary {

double StageUnitary::unitarity_error() const {
  return (matrix * matrix.adjoint() - Matrix3::Identity()).cwiseAbs().maxCoeff();
}

StageUnitary pulse_unitary(Channel channel, double area) {
  int a = 0;
  switch (channel) {
    case Channel::Optical12: a = 0; break;
    case Channel::Control23: a = 1; break;
    default:
      throw Error(ErrorCode::UnknownChannel, "unknown pulse channel");
  }
  const int b = a + 1;
  const double c = std::cos(0.5 * area);
  const Complex is(0.0, std::sin(0.5 * area));
  StageUnitary u;
  u.matrix(a, a) = c;
  u.matrix(b, b) = c;
  u.matrix(a, b) = is;
  u.matrix(b, a) = is;
  return u;
}

StageUnitary free_evolution_unitary(const AtomParams& atom, double dt) {
  if (!(dt >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "free evolution needs dt >= 0");
  }
  StageUnitary u;
  u.matrix(1, 1) = std::polar(1.0, -atom.delta * dt);
  u.matrix(2, 2) = std::polar(1.0, -atom.delta_s * dt);
  return u;
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const StageUnitary& u) {
  return DensityMatrix(u.matrix * rho.matrix() * u.matrix.adjoint());
}

namespace {

// rho -> U rho U^dagger for diagonal U = diag(1, p2, p3).
void free_evolve_in_place(Matrix3& m, const AtomParams& atom, double dt) {
  if (dt == 0.0) return;
  const Complex phase[3] = {1.0, std::polar(1.0, -atom.delta * dt),
                            std::polar(1.0, -atom.delta_s * dt)};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (r != c) m(r, c) *= phase[r] * std::conj(phase[c]);
    }
  }
}

void check_hard(const PulseSequence& seq) {
  if (!seq.all_hard()) {
    throw Error(ErrorCode::FinitePulseOnly,
                "the hard-pulse engine requires zero-duration pulses");
  }
}

void check_sorted(std::span<const double> times) {
  if (!std::is_sorted(times.begin(), times.end())) {
    throw Error(ErrorCode::UnsortedSequence, "sample times must be ascending");
  }
  for (double t : times) {
    if (!std::isfinite(t)) {
      throw Error(ErrorCode::NonFiniteValue, "sample time is not finite");
    }
  }
}

// Walks pulses and samples in merged time order. `on_sample(k, m)` receives
// the sample index, `on_pulse(p, m)` the pulse index.
template <typename OnSample, typename OnPulse>
void walk(const DensityMatrix& rho0, const PulseSequence& seq,
          const AtomParams& atom, std::span<const double> times,
          OnSample&& on_sample, OnPulse&& on_pulse) {
  Matrix3 m = rho0.matrix();
  double now = 0.0;
  const auto& pulses = seq.pulses();
  std::size_t p = 0;
  std::size_t k = 0;
  // Samples before t = 0 see rho0.
  while (k < times.size() && times[k] < 0.0) on_sample(k++, m);
  while (p < pulses.size() || k < times.size()) {
    const bool pulse_next =
        p < pulses.size() && (k == times.size() || pulses[p].t_start <= times[k]);
    const double t = pulse_next ? pulses[p].t_start : times[k];
    free_evolve_in_place(m, atom, t - now);
    now = t;
    if (pulse_next) {
      const StageUnitary u = pulse_unitary(pulses[p].channel, pulses[p].area);
      m = u.matrix * m * u.matrix.adjoint();
      on_pulse(p++, m);
    } else {
      on_sample(k++, m);
    }
  }
}

}  // namespace

Trajectory run_sequence_hard(const DensityMatrix& rho0, const PulseSequence& seq,
                             const AtomParams& atom,
                             std::span<const double> sample_times) {
  check_hard(seq);
  check_sorted(sample_times);
  Trajectory out;
  out.reserve(sample_times.size() + seq.pulses().size());
  walk(
      rho0, seq, atom, sample_times,
      [&](std::size_t k, const Matrix3& m) {
        out.push_back({sample_times[k], DensityMatrix(m), -1});
      },
      [&](std::size_t p, const Matrix3& m) {
        out.push_back({seq.pulses()[p].t_start, DensityMatrix(m),
                       static_cast<int>(p)});
      });
  return out;
}

std::vector<DensityMatrix> sample_hard(const DensityMatrix& rho0,
                                       const PulseSequence& seq,
                                       const AtomParams& atom,
                                       std::span<const double> sample_times) {
  check_hard(seq);
  check_sorted(sample_times);
  std::vector<DensityMatrix> out(sample_times.size());
  walk(
      rho0, seq, atom, sample_times,
      [&](std::size_t k, const Matrix3& m) { out[k] = DensityMatrix(m); },
      [](std::size_t, const Matrix3&) {});
  return out;
}

}  // namespace cdr::unitary
