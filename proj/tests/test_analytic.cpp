#include <doctest.h>

#include <random>

#include "cdr/analytic.hpp"
#include "cdr/ode.hpp"
#include "cdr/unitary.hpp"
#include "oracles.hpp"

using namespace cdr;
using namespace cdr::analytic;

namespace {

constexpr double pi = kPi;
const double kSmall = 0.5 * std::sin(0.1 * pi);  // 0.154508...

double im12(const DensityMatrix& rho) { return rho(0, 1).imag(); }

void check_forms(const DensityMatrix& rho, const oracle::StageForms& f, double tol) {
  CHECK(std::abs(rho(0, 0).real() - f.rho11) <= tol);
  CHECK(std::abs(rho(1, 1).real() - f.rho22) <= tol);
  CHECK(std::abs(rho(2, 2).real() - f.rho33) <= tol);
  CHECK(std::abs(im12(rho) - f.im_rho12) <= tol);
  CHECK(std::abs(rho(0, 1).real()) <= tol);
}

DensityMatrix compose(std::initializer_list<std::pair<Channel, double>> pulses) {
  DensityMatrix rho = ground_state();
  for (const auto& [ch, area] : pulses) {
    rho = unitary::apply_unitary(rho, unitary::pulse_unitary(ch, area));
  }
  return rho;
}

constexpr auto O = Channel::Optical12;
constexpr auto C = Channel::Control23;

}  // namespace

TEST_CASE("after_data") {
  CHECK(max_element_distance(after_data(0.0), ground_state()) <= 1e-15);

  const auto half = after_data(pi / 2);
  CHECK(std::abs(im12(half) + 0.5) <= 1e-12);
  CHECK(std::abs(half(0, 0).real() - 0.5) <= 1e-12);
  CHECK(std::abs(half(1, 1).real() - 0.5) <= 1e-12);

  const auto small = after_data(0.1 * pi);
  CHECK(std::abs(small(1, 1).real() - 0.024472) <= 1e-6);
  CHECK(std::abs(im12(small) + 0.154508) <= 1e-6);
  check_forms(small, oracle::data_forms(0.1 * pi), 1e-15);
}

TEST_CASE("after_r1") {
  CHECK(std::abs(im12(after_r1(0.1 * pi, pi)) - kSmall) <= 1e-12);
  CHECK(std::abs(im12(after_r1(0.1 * pi, pi)) - 0.154508) <= 1e-6);
  CHECK(max_element_distance(after_r1(0.1 * pi, 0.0), after_data(0.1 * pi)) <= 1e-15);
  const auto half = after_r1(pi / 2, pi);
  CHECK(std::abs(im12(half) - 0.5) <= 1e-12);
  CHECK(std::abs(half(1, 1).real() - 0.5) <= 1e-12);
}

TEST_CASE("after_r2_dr is absorptive") {
  const auto dr = after_r2_dr(0.1 * pi, pi, pi);
  CHECK(std::abs(im12(dr) + kSmall) <= 1e-12);
  CHECK(std::abs(dr(1, 1).real() - 0.024472) <= 1e-6);
  CHECK(max_element_distance(after_r2_dr(0.1 * pi, pi, 0.0), after_r1(0.1 * pi, pi)) <=
        1e-15);
  CHECK(std::abs(im12(after_r2_dr(pi / 2, pi, pi)) + 0.5) <= 1e-12);
}

TEST_CASE("after_c1 shelves the optical coherence") {
  const auto c1 = after_c1(0.1 * pi, pi, pi);
  CHECK(std::abs(c1(0, 1)) <= 1e-12);
  CHECK(std::abs(c1(1, 1).real()) <= 1e-12);
  CHECK(std::abs(c1(0, 2).real() - kSmall) <= 1e-12);
  CHECK(std::abs(c1(0, 2).imag()) <= 1e-15);
  const double s = std::sin(0.55 * pi);
  CHECK(std::abs(c1(2, 2).real() - s * s) <= 1e-12);
  CHECK(std::abs(c1(2, 2).real() - 0.975528) <= 1e-6);

  CHECK(max_element_distance(after_c1(0.1 * pi, pi, 0.0), after_r1(0.1 * pi, pi)) <= 1e-15);

  const auto half = after_c1(pi / 2, pi, pi);
  CHECK(std::abs(std::abs(half(0, 2)) - 0.5) <= 1e-12);
  CHECK(std::abs(half(0, 1)) <= 1e-12);
}

TEST_CASE("after_c2 inverts or restores the coherence") {
  const auto inv = after_c2(0.1 * pi, pi, pi, pi);
  CHECK(std::abs(im12(inv) + kSmall) <= 1e-12);
  CHECK(std::abs(inv(2, 2).real()) <= 1e-12);
  CHECK(max_element_distance(after_c2(0.1 * pi, pi, pi, 3 * pi), after_r1(0.1 * pi, pi)) <=
        1e-12);
  CHECK(max_element_distance(after_c2(0.1 * pi, pi, 0, 0), after_r1(0.1 * pi, pi)) <= 1e-15);
}

TEST_CASE("after_r2_cdr is emissive without inversion") {
  const auto fin = after_r2_cdr(0.1 * pi, pi, pi, pi, pi);
  CHECK(std::abs(im12(fin) - kSmall) <= 1e-12);
  CHECK(std::abs(fin(1, 1).real() - 0.024472) <= 1e-6);
  CHECK(std::abs(fin(2, 2).real()) <= 1e-12);
  CHECK(max_element_distance(after_r2_cdr(0.1 * pi, pi, pi, pi, 0.0),
                             after_c2(0.1 * pi, pi, pi, pi)) <= 1e-15);
  CHECK(std::abs(im12(after_r2_cdr(pi / 2, pi, pi, pi, pi)) - 0.5) <= 1e-12);
}

TEST_CASE("stage_chain") {
  SUBCASE("canonical small data pulse") {
    const auto chain = stage_chain(StageAreas::canonical());
    const double expected[5] = {-kSmall, kSmall, 0.0, -kSmall, kSmall};
    REQUIRE(chain.size() == 5);
    for (int k = 0; k < 5; ++k) CHECK(std::abs(im12(chain[k].second) - expected[k]) <= 1e-12);
    CHECK(chain[0].first == Stage::Data);
    CHECK(chain[4].first == Stage::R2);
  }
  SUBCASE("pi/2 data pulse") {
    const auto chain = stage_chain(StageAreas::canonical(pi / 2));
    const double expected[5] = {-0.5, 0.5, 0.0, -0.5, 0.5};
    for (int k = 0; k < 5; ++k) CHECK(std::abs(im12(chain[k].second) - expected[k]) <= 1e-12);
  }
  SUBCASE("zero areas") {
    for (const auto& [stage, rho] : stage_chain(StageAreas{})) {
      CHECK(max_element_distance(rho, ground_state()) == 0.0);
    }
  }
}

TEST_CASE("closed forms match the expanded trigonometric forms") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> area(0.0, 4.0 * pi);
  for (int n = 0; n < 2000; ++n) {
    const double d = area(rng), r1 = area(rng), c1 = area(rng), c2 = area(rng),
                 r2 = area(rng);
    check_forms(after_data(d), oracle::data_forms(d), 1e-13);
    check_forms(after_r1(d, r1), oracle::r1_forms(d, r1), 1e-13);
    check_forms(after_r2_dr(d, r1, r2), oracle::r2_dr_forms(d, r1, r2), 1e-13);

    const auto c1s = after_c1(d, r1, c1);
    const auto f1 = oracle::c_forms(d, r1, c1);
    check_forms(c1s, f1, 1e-13);
    CHECK(std::abs(c1s(0, 2).real() - f1.re_rho13) <= 1e-13);
    CHECK(std::abs(c1s(1, 2).imag() - f1.im_rho23) <= 1e-13);
    CHECK(std::abs(c1s(1, 2).real()) <= 1e-13);

    const auto c2s = after_c2(d, r1, c1, c2);
    const auto f2 = oracle::c_forms(d, r1, c1 + c2);
    check_forms(c2s, f2, 1e-13);
    CHECK(std::abs(c2s(0, 2).real() - f2.re_rho13) <= 1e-13);
    CHECK(std::abs(c2s(1, 2).imag() - f2.im_rho23) <= 1e-13);

    check_forms(after_r2_cdr(d, r1, c1, c2, r2), oracle::r2_cdr_forms(d, r1, c1, c2, r2),
                1e-12);
  }
}

TEST_CASE("uncorrected final-stage forms agree only at canonical areas") {
  const auto canon = after_r2_cdr(0.1 * pi, pi, pi, pi, pi);
  const auto slipped = oracle::r2_cdr_forms(0.1 * pi, pi, pi, pi, pi, false);
  CHECK(std::abs(canon(1, 1).real() - slipped.rho22) <= 1e-12);
  CHECK(std::abs(canon(2, 2).real() - slipped.rho33) <= 1e-12);
  CHECK(std::abs(im12(canon) - slipped.im_rho12) <= 1e-12);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> area(0.0, 4.0 * pi);
  double worst11 = 0.0, worst12 = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double d = area(rng), r1 = area(rng), c1 = area(rng), c2 = area(rng),
                 r2 = area(rng);
    const auto rho = after_r2_cdr(d, r1, c1, c2, r2);
    const auto p = oracle::r2_cdr_forms(d, r1, c1, c2, r2, false);
    worst11 = std::max(worst11, std::abs(rho(0, 0).real() - p.rho11));
    worst12 = std::max(worst12, std::abs(im12(rho) - p.im_rho12));
    // rho22 carries neither slip.
    CHECK(std::abs(rho(1, 1).real() - p.rho22) <= 1e-12);
  }
  MESSAGE("uncorrected rho11 deviates by up to " << worst11 << ", Im rho12 by up to " << worst12);
  CHECK(worst11 > 0.1);
  CHECK(worst12 > 0.1);
}

TEST_CASE("every stage state is a valid density matrix") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> area(-4.0 * pi, 4.0 * pi);
  for (int n = 0; n < 500; ++n) {
    const StageAreas a{area(rng), area(rng), area(rng), area(rng), area(rng)};
    for (const auto& [stage, rho] : stage_chain(a)) {
      CHECK(validate(rho).ok());
    }
    CHECK(validate(after_r2_dr(a.phi_d, a.phi_r1, a.phi_r2)).ok());
  }
}

TEST_CASE("hard-pulse consistency with the unitary composition") {
  const double step = pi / 20.0;
  std::vector<double> grid;
  for (int k = 0; k <= 80; ++k) grid.push_back(k * step);

  double worst = 0.0;
  for (double d : grid) {
    worst = std::max(worst, max_element_distance(after_data(d), compose({{O, d}})));
    for (double r1 : grid) {
      worst = std::max(worst, max_element_distance(after_r1(d, r1), compose({{O, d}, {O, r1}})));
      for (double x : grid) {
        worst = std::max(worst, max_element_distance(after_r2_dr(d, r1, x),
                                                     compose({{O, d}, {O, r1}, {O, x}})));
        worst = std::max(worst, max_element_distance(after_c1(d, r1, x),
                                                     compose({{O, d}, {O, r1}, {C, x}})));
      }
    }
  }
  // Four- and five-area stages: every axis swept over the grid around each
  // canonical point, plus random grid points.
  const double canon[5] = {0.1 * pi, pi, pi, pi, pi};
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> pick(0, 80);
  auto check_point = [&](const double a[5]) {
    worst = std::max(worst, max_element_distance(
                                after_c2(a[0], a[1], a[2], a[3]),
                                compose({{O, a[0]}, {O, a[1]}, {C, a[2]}, {C, a[3]}})));
    worst = std::max(worst, max_element_distance(
                                after_r2_cdr(a[0], a[1], a[2], a[3], a[4]),
                                compose({{O, a[0]}, {O, a[1]}, {C, a[2]}, {C, a[3]}, {O, a[4]}})));
  };
  for (int axis = 0; axis < 5; ++axis) {
    for (double x : grid) {
      double a[5] = {canon[0], canon[1], canon[2], canon[3], canon[4]};
      a[axis] = x;
      check_point(a);
    }
  }
  for (int n = 0; n < 20000; ++n) {
    const double a[5] = {grid[pick(rng)], grid[pick(rng)], grid[pick(rng)], grid[pick(rng)],
                         grid[pick(rng)]};
    check_point(a);
  }
  MESSAGE("worst analytic vs unitary deviation: " << worst);
  CHECK(worst <= 1e-10);
}

TEST_CASE("stage derivatives equal the rate equations with the active drive") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> area(0.0, 4.0 * pi);
  const double h = 1e-6;
  const ode::DriveSample optical{1.0, 0.0};
  const ode::DriveSample control{0.0, 1.0};
  const AtomParams resonant;

  auto residual = [&](auto&& stage, double x, const ode::DriveSample& drive) {
    const Matrix3 fd = (stage(x + h).matrix() - stage(x - h).matrix()) / (2.0 * h);
    const Matrix3 rate = ode::rhs(stage(x), drive, resonant);
    return oracle::max_abs(fd - rate);
  };

  double worst = 0.0;
  for (int n = 0; n < 200; ++n) {
    const double d = area(rng), r1 = area(rng), c1 = area(rng), c2 = area(rng),
                 r2 = area(rng);
    worst = std::max(worst, residual([](double x) { return after_data(x); }, d, optical));
    worst = std::max(worst, residual([&](double x) { return after_r1(d, x); }, r1, optical));
    worst = std::max(worst,
                     residual([&](double x) { return after_r2_dr(d, r1, x); }, r2, optical));
    worst = std::max(worst, residual([&](double x) { return after_c1(d, r1, x); }, c1, control));
    worst = std::max(worst,
                     residual([&](double x) { return after_c2(d, r1, c1, x); }, c2, control));
    worst = std::max(worst, residual([&](double x) { return after_r2_cdr(d, r1, c1, c2, x); },
                                     r2, optical));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("coherence inversion law and 4n*pi recovery") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> area(0.0, 4.0 * pi);
  for (int n = 0; n < 1000; ++n) {
    const double d = area(rng), r1 = area(rng), c1 = area(rng), c2 = area(rng);
    const double lhs = im12(after_c2(d, r1, c1, c2));
    const double rhs = std::cos((c1 + c2) / 2) * im12(after_r1(d, r1));
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
  for (int m = 1; m <= 3; ++m) {
    for (double d : {0.1 * pi, 0.5 * pi, 1.0, 2.5}) {
      for (double c1 : {pi, 0.3 * pi, 2.2}) {
        CHECK(max_element_distance(after_c2(d, pi, c1, 4 * m * pi - c1), after_r1(d, pi)) <=
              1e-12);
      }
    }
  }
}

TEST_CASE("sign law and population bracket for canonical pi pulses") {
  for (int k = 1; k <= 100; ++k) {
    const double d = 0.5 * pi * k / 100.0;  // (0, pi/2]
    const auto chain = stage_chain(StageAreas::canonical(d));
    CHECK(im12(chain[0].second) < 0.0);
    CHECK(im12(chain[1].second) > 0.0);
    CHECK(im12(chain[3].second) < 0.0);
    CHECK(im12(chain[4].second) > 0.0);
    if (k < 100) {
      const auto& r1 = chain[1].second;
      const auto& fin = chain[4].second;
      CHECK(r1(1, 1).real() > r1(0, 0).real());
      CHECK(fin(1, 1).real() < fin(0, 0).real());
    }
  }
}
