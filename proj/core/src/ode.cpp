#include "cdr/ode.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cdr/error.hpp"

namespace cdr::ode {

Matrix3 rhs(const Matrix3& r, const DriveSample& drive, const AtomParams& atom) {
  const Complex i(0.0, 1.0);
  const double h = 0.5 * drive.omega_j;
  const double g = 0.5 * drive.omega_k;
  const double d = atom.delta;
  const double ds = atom.delta_s;
  const auto& gm = atom.gamma;

  Matrix3 out;
  out(0, 0) = -i * h * (r(0, 1) - r(1, 0)) - gm[0] * r(0, 0);
  out(1, 1) = -i * h * (r(1, 0) - r(0, 1)) - i * g * (r(1, 2) - r(2, 1)) -
              gm[1] * r(1, 1);
  out(2, 2) = -i * g * (r(2, 1) - r(1, 2)) - gm[2] * r(2, 2);
  out(0, 1) = -i * h * (r(0, 0) - r(1, 1)) - i * g * r(0, 2) + i * d * r(0, 1) -
              0.5 * (gm[0] + gm[1]) * r(0, 1);
  out(0, 2) = -i * g * r(0, 1) + i * h * r(1, 2) + i * ds * r(0, 2) -
              0.5 * (gm[0] + gm[2]) * r(0, 2);
  out(1, 2) = -i * g * (r(1, 1) - r(2, 2)) + i * h * r(0, 2) -
              i * (d - ds) * r(1, 2) - 0.5 * (gm[1] + gm[2]) * r(1, 2);
  out(1, 0) = std::conj(out(0, 1));
  out(2, 0) = std::conj(out(0, 2));
  out(2, 1) = std::conj(out(1, 2));
  return out;
}

namespace {

Matrix3 rk4(const Matrix3& y, double t, double dt, const DriveFunction& drive,
            const AtomParams& atom) {
  const DriveSample d0 = drive(t);
  const DriveSample dm = drive(t + 0.5 * dt);
  const DriveSample d1 = drive(t + dt);
  const Matrix3 k1 = rhs(y, d0, atom);
  const Matrix3 k2 = rhs(y + (0.5 * dt) * k1, dm, atom);
  const Matrix3 k3 = rhs(y + (0.5 * dt) * k2, dm, atom);
  const Matrix3 k4 = rhs(y + dt * k3, d1, atom);
  Matrix3 next = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return 0.5 * (next + next.adjoint());
}

// Same step with the drive frozen over the step; used inside a pulse
// segment where the envelope is constant.
Matrix3 rk4_const(const Matrix3& y, double dt, const DriveSample& d,
                  const AtomParams& atom) {
  const Matrix3 k1 = rhs(y, d, atom);
  const Matrix3 k2 = rhs(y + (0.5 * dt) * k1, d, atom);
  const Matrix3 k3 = rhs(y + (0.5 * dt) * k2, d, atom);
  const Matrix3 k4 = rhs(y + dt * k3, d, atom);
  Matrix3 next = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return 0.5 * (next + next.adjoint());
}

bool all_finite(const Matrix3& m) { return m.allFinite(); }

}  // namespace

DensityMatrix rk4_step(const DensityMatrix& rho, double t, double dt,
                       const DriveFunction& drive, const AtomParams& atom) {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "rk4_step needs dt > 0");
  }
  Matrix3 next = rk4(rho.matrix(), t, dt, drive, atom);
  if (!all_finite(next)) {
    throw Error(ErrorCode::NonFiniteResult,
                "RK4 step produced a non-finite state; dt is too large");
  }
  return DensityMatrix(next);
}

DriveSample drive_at(const PulseSequence& seq, double t) {
  DriveSample d;
  for (const Pulse& p : seq.pulses()) {
    if (p.duration > 0.0 && t >= p.t_start && t < p.t_end()) {
      const double omega = p.rabi_frequency();
      if (p.channel == Channel::Optical12) {
        d.omega_j += omega;
      } else {
        d.omega_k += omega;
      }
    }
  }
  return d;
}

Trajectory integrate_sequence(const DensityMatrix& rho0, const PulseSequence& seq,
                              const AtomParams& atom, const IntegratorOptions& opts,
                              std::span<const double> sample_times) {
  check(atom);
  if (!seq.all_finite()) {
    throw Error(ErrorCode::HardPulseOnly,
                "the ODE engine needs finite-duration pulses");
  }
  if (!(opts.dt > 0.0) || !std::isfinite(opts.dt)) {
    throw Error(ErrorCode::InvalidArgument, "dt must be positive and finite");
  }
  const double shortest = seq.shortest_duration();
  if (shortest > 0.0 && opts.dt > shortest / 100.0 * (1.0 + 1e-9)) {
    throw Error(ErrorCode::StepTooCoarse,
                "dt must not exceed the shortest pulse duration / 100");
  }
  if (!std::is_sorted(sample_times.begin(), sample_times.end())) {
    throw Error(ErrorCode::UnsortedSequence, "sample times must be ascending");
  }
  if (!sample_times.empty() &&
      (sample_times.front() < 0.0 || sample_times.back() > seq.t_end())) {
    throw Error(ErrorCode::InvalidArgument,
                "sample times must lie within [0, t_end]");
  }

  // Breakpoints: pulse edges and the window end. Samples are handled while
  // walking so that equal times are not duplicated.
  std::vector<double> edges;
  for (const Pulse& p : seq.pulses()) {
    edges.push_back(p.t_start);
    edges.push_back(p.t_end());
  }
  edges.push_back(seq.t_end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Trajectory out;
  out.reserve(sample_times.size());
  Matrix3 y = rho0.matrix();
  double now = 0.0;
  std::size_t k = 0;
  std::size_t e = 0;

  auto advance_to = [&](double target) {
    const double span = target - now;
    if (span <= 0.0) return;
    const DriveSample d = drive_at(seq, now + 0.5 * span);
    const auto n = static_cast<long>(std::ceil(span / opts.dt - 1e-9));
    const double h = span / static_cast<double>(std::max(n, 1L));
    for (long s = 0; s < std::max(n, 1L); ++s) {
      y = rk4_const(y, h, d, atom);
    }
    if (!all_finite(y)) {
      throw Error(ErrorCode::NonFiniteResult,
                  "integration produced a non-finite state");
    }
    now = target;
  };

  while (k < sample_times.size()) {
    while (e < edges.size() && edges[e] <= now) ++e;
    const double next_edge = e < edges.size() ? edges[e] : seq.t_end();
    const double target = std::min(next_edge, sample_times[k]);
    advance_to(target);
    while (k < sample_times.size() && sample_times[k] <= now) {
      out.push_back({sample_times[k], DensityMatrix(y), -1});
      ++k;
    }
  }
  return out;
}

Trajectory integrate_sequence(const DensityMatrix& rho0, const PulseSequence& seq,
                              const AtomParams& atom, double dt, int stride) {
  if (stride < 1) {
    throw Error(ErrorCode::InvalidArgument, "sample stride must be >= 1");
  }
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  }
  std::vector<double> times;
  const double step = dt * stride;
  for (long n = 0;; ++n) {
    const double t = static_cast<double>(n) * step;
    if (t >= seq.t_end() * (1.0 - 1e-12)) break;
    times.push_back(t);
  }
  times.push_back(seq.t_end());
  return integrate_sequence(rho0, seq, atom, IntegratorOptions{dt}, times);
}

}  // namespace cdr::ode
