#include <benchmark/benchmark.h>

#include "cdr/analytic.hpp"
#include "cdr/ensemble.hpp"
#include "cdr/ode.hpp"
#include "cdr/sweep.hpp"

namespace {

using namespace cdr;

void BM_Rk4Step(benchmark::State& state) {
  AtomParams atom;
  atom.delta = 2.0 * kPi * 0.3e6;
  const ode::DriveFunction drive = [](double) { return ode::DriveSample{1e7, 0.0}; };
  DensityMatrix rho = analytic::after_data(0.1 * kPi);
  double t = 0.0;
  for (auto _ : state) {
    rho = ode::rk4_step(rho, t, 1e-10, drive, atom);
    t += 1e-10;
    benchmark::DoNotOptimize(rho);
  }
}
BENCHMARK(BM_Rk4Step);

void BM_EnsembleHard(benchmark::State& state) {
  constexpr double pi = kPi;
  const PulseSequence seq({{Channel::Optical12, 0.1 * pi, 0.0, 0.0},
                           {Channel::Optical12, pi, 10e-6, 0.0},
                           {Channel::Control23, pi, 12e-6, 0.0},
                           {Channel::Control23, pi, 16e-6, 0.0},
                           {Channel::Optical12, pi, 30e-6, 0.0}},
                          50e-6);
  ensemble::EnsembleSpec spec;
  spec.n_atoms = static_cast<int>(state.range(0));
  const auto times = ensemble::time_grid(seq.t_end(), spec.default_time_step());
  for (auto _ : state) {
    benchmark::DoNotOptimize(ensemble::simulate_polarization(seq, spec, times));
  }
  state.SetItemsProcessed(state.iterations() * spec.n_atoms *
                          static_cast<int64_t>(times.size()));
}
BENCHMARK(BM_EnsembleHard)->Arg(51)->Arg(201)->Unit(benchmark::kMillisecond);

void BM_FigureSweep(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep::figure_dataset(sweep::FigureId::Fig4b));
  }
}
BENCHMARK(BM_FigureSweep)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
