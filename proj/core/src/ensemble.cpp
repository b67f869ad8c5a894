#include "cdr/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <thread>

#include "cdr/error.hpp"
#include "cdr/ode.hpp"
#include "cdr/unitary.hpp"

namespace cdr::ensemble {

double EnsembleSpec::default_time_step() const {
  const double f_max = span * sigma / (2.0 * kPi);
  return 1.0 / (40.0 * f_max);
}

double EnsembleSpec::revival_period() const {
  const double spacing = 2.0 * span * sigma / (n_atoms - 1);
  return 2.0 * kPi / spacing;
}

void check(const EnsembleSpec& spec) {
  if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma)) {
    throw Error(ErrorCode::InvalidArgument, "ensemble sigma must be > 0");
  }
  if (spec.n_atoms < 3 || spec.n_atoms % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "ensemble n_atoms must be odd and >= 3");
  }
  if (!(spec.span >= 0.0) || !std::isfinite(spec.span)) {
    throw Error(ErrorCode::InvalidArgument, "ensemble span must be >= 0");
  }
}

std::vector<WeightedAtom> build_ensemble(const EnsembleSpec& spec) {
  check(spec);
  const int n = spec.n_atoms;
  const int mid = n / 2;
  std::vector<WeightedAtom> atoms(n);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    // Index distance from the centre, mirrored so that the grid is exactly
    // antisymmetric in delta.
    const int offset = k - mid;
    const double x = spec.span * static_cast<double>(offset) / mid;
    atoms[k].atom.delta = x * spec.sigma;
    atoms[k].weight = std::exp(-0.5 * x * x);
  }
  // Sum from the tails inwards so that mirrored pairs are added together.
  for (int k = 0; k < mid; ++k) {
    total += atoms[k].weight + atoms[n - 1 - k].weight;
  }
  total += atoms[mid].weight;
  for (auto& a : atoms) a.weight /= total;
  return atoms;
}

std::vector<double> time_grid(double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "time grid needs dt > 0, t_end >= 0");
  }
  const auto n = static_cast<long>(std::floor(t_end / dt + 1e-9));
  std::vector<double> times(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) times[k] = std::min(static_cast<double>(k) * dt, t_end);
  return times;
}

namespace {

// Fixed chunking keeps the floating-point summation order independent of the
// number of worker threads.
constexpr int kChunkAtoms = 8;

struct Partial {
  std::vector<Complex> p;
  std::vector<double> r11, r22, r33;

  explicit Partial(std::size_t n) : p(n), r11(n), r22(n), r33(n) {}

  void add(double w, const DensityMatrix& rho, std::size_t k) {
    p[k] += w * rho(0, 1);
    r11[k] += w * rho(0, 0).real();
    r22[k] += w * rho(1, 1).real();
    r33[k] += w * rho(2, 2).real();
  }
};

std::vector<DensityMatrix> evolve_atom(const PulseSequence& seq,
                                       const AtomParams& atom,
                                       std::span<const double> times,
                                       const SimulationOptions& opts, double ode_dt) {
  if (opts.engine == Engine::Hard) {
    return unitary::sample_hard(ground_state(), seq, atom, times);
  }
  const Trajectory traj = ode::integrate_sequence(
      ground_state(), seq, atom, ode::IntegratorOptions{ode_dt}, times);
  std::vector<DensityMatrix> out;
  out.reserve(traj.size());
  for (const auto& pt : traj) out.push_back(pt.rho);
  return out;
}

}  // namespace

EnsembleTrace simulate_ensemble(const PulseSequence& seq, const EnsembleSpec& spec,
                                std::span<const double> times,
                                const SimulationOptions& opts) {
  const std::vector<WeightedAtom> atoms = build_ensemble(spec);
  const std::size_t n_samples = times.size();

  double ode_dt = opts.ode_dt;
  if (opts.engine == Engine::Ode && ode_dt <= 0.0) {
    ode_dt = seq.shortest_duration() / 100.0;
    if (n_samples > 1) ode_dt = std::min(ode_dt, times[1] - times[0]);
    if (!(ode_dt > 0.0)) ode_dt = spec.default_time_step();
  }
  // Surface engine precondition errors before spawning workers.
  if (opts.engine == Engine::Hard && !seq.all_hard()) {
    throw Error(ErrorCode::FinitePulseOnly,
                "the hard-pulse engine requires zero-duration pulses");
  }
  if (opts.engine == Engine::Ode && !seq.all_finite()) {
    throw Error(ErrorCode::HardPulseOnly,
                "the ODE engine needs finite-duration pulses");
  }

  const int n_chunks =
      (static_cast<int>(atoms.size()) + kChunkAtoms - 1) / kChunkAtoms;
  std::vector<Partial> partials(n_chunks, Partial(n_samples));

  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(n_chunks);
  auto worker = [&] {
    for (int c = next++; c < n_chunks; c = next++) {
      try {
        const int lo = c * kChunkAtoms;
        const int hi = std::min<int>(lo + kChunkAtoms, static_cast<int>(atoms.size()));
        for (int a = lo; a < hi; ++a) {
          const auto states = evolve_atom(seq, atoms[a].atom, times, opts, ode_dt);
          for (std::size_t k = 0; k < n_samples; ++k) {
            partials[c].add(atoms[a].weight, states[k], k);
          }
        }
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };

  unsigned n_threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  n_threads = std::clamp<unsigned>(n_threads, 1u, static_cast<unsigned>(n_chunks));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  EnsembleTrace out;
  out.times.assign(times.begin(), times.end());
  out.polarization.assign(n_samples, Complex{});
  out.rho11.assign(n_samples, 0.0);
  out.rho22.assign(n_samples, 0.0);
  out.rho33.assign(n_samples, 0.0);
  for (const Partial& part : partials) {
    for (std::size_t k = 0; k < n_samples; ++k) {
      out.polarization[k] += part.p[k];
      out.rho11[k] += part.r11[k];
      out.rho22[k] += part.r22[k];
      out.rho33[k] += part.r33[k];
    }
  }
  return out;
}

std::vector<Complex> simulate_polarization(const PulseSequence& seq,
                                           const EnsembleSpec& spec,
                                           std::span<const double> times,
                                           const SimulationOptions& opts) {
  return simulate_ensemble(seq, spec, times, opts).polarization;
}

namespace {

bool odd_pi_multiple(double area) {
  const double m = area / kPi;
  const double nearest = std::round(m);
  return std::abs(m - nearest) < 1e-6 &&
         static_cast<long long>(std::abs(nearest)) % 2 == 1;
}

double pulse_time(const Pulse& p) { return p.t_start + 0.5 * p.duration; }

}  // namespace

std::vector<double> predict_echo_times(const PulseSequence& seq) {
  const auto& pulses = seq.pulses();
  auto data = std::find_if(pulses.begin(), pulses.end(), [](const Pulse& p) {
    return p.channel == Channel::Optical12;
  });
  if (data == pulses.end()) return {};

  std::vector<double> echoes;
  double s = 0.0;
  double now = pulse_time(*data);
  bool shelved = false;
  bool rephased = false;

  auto run_until = [&](double t_next) {
    if (!shelved && rephased && s < 0.0) {
      const double crossing = now - s;
      if (crossing < t_next) echoes.push_back(crossing);
    }
    if (!shelved) s += t_next - now;
    now = t_next;
  };

  for (auto it = std::next(data); it != pulses.end(); ++it) {
    run_until(pulse_time(*it));
    if (!odd_pi_multiple(it->area)) continue;
    if (it->channel == Channel::Optical12) {
      s = -s;
      rephased = true;
    } else {
      shelved = !shelved;
    }
  }
  // Final stretch is closed at t_end.
  if (!shelved && rephased && s < 0.0 && now - s <= seq.t_end()) {
    echoes.push_back(now - s);
  }
  return echoes;
}

const EchoEvent* EchoReport::find(const std::string& label) const {
  for (const auto& e : events) {
    if (e.label == label) return &e;
  }
  return nullptr;
}

EchoReport detect_echoes(std::span<const double> times,
                         std::span<const Complex> polarization,
                         const PulseSequence& seq, double threshold_fraction) {
  if (times.size() != polarization.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "time and polarization series differ in length");
  }
  EchoReport report;
  report.times.assign(times.begin(), times.end());
  report.trace.assign(polarization.begin(), polarization.end());
  const std::size_t n = times.size();
  if (n < 3) return report;

  auto inside_pulse = [&](double t) {
    for (const Pulse& p : seq.pulses()) {
      if (t >= p.t_start && t <= p.t_end()) return true;
    }
    return false;
  };

  // Reference level excludes the driven intervals, where finite pulses
  // produce large transient coherence.
  double peak = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!inside_pulse(times[k])) peak = std::max(peak, std::abs(polarization[k]));
  }
  if (peak == 0.0) return report;
  const double threshold = threshold_fraction * peak;
  const double step = (times.back() - times.front()) / static_cast<double>(n - 1);

  const std::vector<double> predicted = predict_echo_times(seq);

  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double a = std::abs(polarization[k]);
    if (a < threshold) continue;
    if (!(a > std::abs(polarization[k - 1]) && a >= std::abs(polarization[k + 1]))) {
      continue;
    }
    if (inside_pulse(times[k])) continue;

    EchoEvent ev;
    ev.time = times[k];
    ev.amplitude = a;
    ev.value = polarization[k];
    ev.im_sign = polarization[k].imag() > 0.0 ? 1 : -1;
    ev.label = "other";
    for (std::size_t j = 0; j < predicted.size() && j < 2; ++j) {
      if (std::abs(predicted[j] - ev.time) <= 3.0 * step) {
        ev.label = j == 0 ? "E1" : "E2";
        break;
      }
    }
    report.events.push_back(ev);
  }
  return report;
}

}  // namespace cdr::ensemble
