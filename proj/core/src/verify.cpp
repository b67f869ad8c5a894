#include "cdr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cdr/analytic.hpp"
#include "cdr/area_theorem.hpp"
#include "cdr/ode.hpp"
#include "cdr/unitary.hpp"

namespace cdr::verify {

namespace {

constexpr double pi = kPi;

CheckResult make(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured <= tol, measured, tol, std::move(detail)};
}

double chain_error(double phi_d, const std::array<double, 5>& expected_im12) {
  const auto chain = analytic::stage_chain(analytic::StageAreas::canonical(phi_d));
  double worst = 0.0;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    worst = std::max(worst, std::abs(chain[k].second(0, 1).imag() - expected_im12[k]));
  }
  return worst;
}

CheckResult canonical_stage_values() {
  const double c = 0.5 * std::sin(0.1 * pi);
  double worst = chain_error(0.1 * pi, {-c, c, 0.0, -c, c});
  const DensityMatrix fin = analytic::after_r2_cdr(0.1 * pi, pi, pi, pi, pi);
  const double s = std::sin(0.05 * pi);
  worst = std::max(worst, std::abs(fin(2, 2).real()));
  worst = std::max(worst, std::abs(fin(1, 1).real() - s * s));
  return make("canonical stage values", worst, 1e-9);
}

CheckResult half_pi_chain() {
  return make("pi/2 data-pulse chain", chain_error(0.5 * pi, {-0.5, 0.5, 0.0, -0.5, 0.5}),
              1e-9);
}

CheckResult control_recovery() {
  double worst = 0.0;
  for (double d : {0.1 * pi, 0.5 * pi, 0.3}) {
    const DensityMatrix r1 = analytic::after_r1(d, pi);
    for (int n = 1; n <= 3; ++n) {
      const double total = 4.0 * pi * n;
      worst = std::max(worst, max_element_distance(
                                  analytic::after_c2(d, pi, pi, total - pi), r1));
    }
    const DensityMatrix inv = analytic::after_c2(d, pi, pi, pi);
    worst = std::max(worst, std::abs(inv(0, 1) + r1(0, 1)));
  }
  return make("control-pair recovery (4n*pi) and inversion (2pi)", worst, 1e-12);
}

PulseSequence canonical_sequence(double duration) {
  const double us = 1e-6;
  const std::array<double, 5> starts{0.0, 10 * us, 12 * us, 16 * us, 30 * us};
  const std::array<Channel, 5> channels{Channel::Optical12, Channel::Optical12,
                                        Channel::Control23, Channel::Control23,
                                        Channel::Optical12};
  const std::array<double, 5> areas{0.1 * pi, pi, pi, pi, pi};
  std::vector<Pulse> pulses;
  for (int k = 0; k < 5; ++k) {
    pulses.push_back({channels[k], areas[k], starts[k], duration});
  }
  return PulseSequence(pulses, 31 * us + duration);
}

std::vector<CheckResult> engine_equivalence() {
  const DensityMatrix analytic_final = analytic::after_r2_cdr(0.1 * pi, pi, pi, pi, pi);

  const PulseSequence hard = canonical_sequence(0.0);
  const double t_end = hard.t_end();
  const std::array<double, 1> end{t_end};
  const DensityMatrix hard_final =
      unitary::sample_hard(ground_state(), hard, AtomParams{}, end).back();

  const double duration = 1e-6;
  const PulseSequence soft = canonical_sequence(duration);
  const double dt = duration / 1000.0;
  const Trajectory traj =
      ode::integrate_sequence(ground_state(), soft, AtomParams{}, dt, 100);
  const DensityMatrix ode_final = traj.back().rho;

  double trace_drift = 0.0;
  double purity_drift = 0.0;
  for (const auto& pt : traj) {
    trace_drift = std::max(trace_drift, std::abs(pt.rho.trace() - Complex(1.0)));
    purity_drift = std::max(purity_drift, std::abs(pt.rho.purity() - 1.0));
  }

  const double agreement =
      std::max({max_element_distance(analytic_final, hard_final),
                max_element_distance(analytic_final, ode_final),
                max_element_distance(hard_final, ode_final)});
  return {make("analytic / unitary / RK4 agreement", agreement, 1e-8),
          make("RK4 trace drift", trace_drift, 1e-9),
          make("RK4 purity drift", purity_drift, 1e-9)};
}

// Independent route: build H as a matrix and take the commutator.
Matrix3 commutator_rhs(const Matrix3& rho, double omega_j, double omega_k) {
  Matrix3 h = Matrix3::Zero();
  h(0, 1) = h(1, 0) = -0.5 * omega_j;
  h(1, 2) = h(2, 1) = -0.5 * omega_k;
  return Complex(0.0, -1.0) * (h * rho - rho * h);
}

Matrix3 random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix3 rho = Matrix3::Zero();
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    Eigen::Vector3cd psi;
    for (int i = 0; i < 3; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
    psi.normalize();
    const double w = unit(rng);
    rho += w * psi * psi.adjoint();
    total += w;
  }
  return rho / total;
}

CheckResult rhs_fidelity() {
  std::mt19937_64 rng(20170401);
  std::uniform_real_distribution<double> drive(-2.0, 2.0);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Matrix3 rho = random_state(rng);
    const ode::DriveSample d{drive(rng), drive(rng)};
    const Matrix3 got = ode::rhs(rho, d, AtomParams{});
    worst = std::max(worst, (got - commutator_rhs(rho, d.omega_j, d.omega_k))
                                .cwiseAbs()
                                .maxCoeff());
  }
  return make("rate equations vs commutator (100 states)", worst, 1e-14);
}

std::vector<CheckResult> area_theorem() {
  const auto beer = area::propagate_area({0.01, 1.0, 2.0, 1e-3});
  const double expected = 0.01 * std::exp(-1.0);
  const double rel = std::abs(beer.back().phi - expected) / expected;

  const auto fixed = area::propagate_area({pi, 1.0, 5.0, 1e-3});
  double drift = 0.0;
  for (const auto& s : fixed) drift = std::max(drift, std::abs(s.phi - pi));

  std::ostringstream os;
  os << "phi(alpha z = 2) = " << beer.back().phi << ", Beer's law " << expected;
  return {make("small-area Beer's law (relative)", rel, 0.01, os.str()),
          make("pi-area fixed point", drift, 1e-12)};
}

}  // namespace

std::vector<CheckResult> run_all() {
  std::vector<CheckResult> out;
  out.push_back(canonical_stage_values());
  out.push_back(half_pi_chain());
  out.push_back(control_recovery());
  for (auto& r : engine_equivalence()) out.push_back(std::move(r));
  out.push_back(rhs_fidelity());
  for (auto& r : area_theorem()) out.push_back(std::move(r));
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

}  // namespace cdr::verify
