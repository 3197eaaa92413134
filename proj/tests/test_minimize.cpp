#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "elab/drop.hpp"
#include "elab/error.hpp"
#include "elab/minimize.hpp"

using namespace elab;
using namespace elab::minimize;

namespace {

constexpr double kPi = std::numbers::pi;
const double kPiCubed = kPi * kPi * kPi;

OptimState random_state(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  OptimState s = circle_state(n, 1.0);
  for (int i = 0; i < n; ++i) s.thetas[i] += 0.05 * u(rng);
  s.thetas[n] = s.thetas[0] + 2.0 * kPi;
  s.L = 5.0 + 2.0 * u(rng);
  s.multipliers = {0.5 * u(rng), 0.5 * u(rng), 0.0};
  s.penalty = 100.0;
  return s;
}

void check_limit(const OptimResult& r) {
  CHECK(r.converged);
  CHECK(r.violation <= 1e-8);
  CHECK(r.gradient_norm <= 1e-6);
  CHECK(std::abs(r.metrics.EEA / kPiCubed - 1.0) <= 1e-3);
  CHECK(r.curvature_stddev <= 1e-3);
  CHECK(r.stationarity_residual <= 1e-2);
  CHECK(r.metrics.EEA >= kPiCubed - 1e-6);
  // disc of radius 2^(-1/3)
  CHECK(r.state.L == doctest::Approx(2.0 * kPi * std::pow(2.0, -1.0 / 3.0)).epsilon(1e-4));
}

}  // namespace

TEST_CASE("objective on circle states") {
  OptimState s = circle_state(256, std::pow(2.0, -1.0 / 3.0));
  CHECK(std::abs(objective(s) - 3.0 * kPi * std::pow(2.0, -2.0 / 3.0)) <= 1e-6);
  CHECK(evaluate(s).violation() < 1e-13);
  s = circle_state(256, 1.0);
  CHECK(std::abs(objective(s) - 2.0 * kPi) <= 1e-12);
}

TEST_CASE("penalty and multiplier terms") {
  OptimState s = circle_state(64, 1.0);
  s.thetas[3] += 0.1;
  s.thetas[10] -= 0.05;
  const Evaluation plain = evaluate(s);
  s.multipliers = {0.7, -0.2, 0.0};
  s.penalty = 50.0;
  const Evaluation e = evaluate(s);
  const double cx = e.closure_x, cy = e.closure_y;
  CHECK(e.value == doctest::Approx(plain.E + plain.A + 0.7 * cx - 0.2 * cy +
                                   25.0 * (cx * cx + cy * cy)));
}

TEST_CASE("analytic gradient matches central differences") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    OptimState s = random_state(rng, 64);
    const Gradient g = gradient(s);
    const double scale = g.norm();
    const double h = 1e-6;
    for (std::size_t i = 0; i < s.nodes(); i += 7) {
      OptimState up = s, dn = s;
      up.thetas[i] += h;
      dn.thetas[i] -= h;
      if (i == 0) {
        up.thetas.back() += h;
        dn.thetas.back() -= h;
      }
      const double fd = (objective(up) - objective(dn)) / (2 * h);
      CHECK(std::abs(fd - g.thetas[i]) <= 1e-5 * std::max(std::abs(fd), 1e-2 * scale));
    }
    OptimState up = s, dn = s;
    up.L += h;
    dn.L -= h;
    const double fd = (objective(up) - objective(dn)) / (2 * h);
    CHECK(g.L == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("small-turning branches agree with the closed forms") {
  // Segments with turning below the series cut-offs.
  OptimState s = circle_state(4096, 1.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e-4, 1e-4);
  for (std::size_t i = 0; i < s.nodes(); ++i) s.thetas[i] += u(rng);
  s.thetas.back() = s.thetas.front() + 2.0 * kPi;
  const double ref = 2.0 * kPi;
  CHECK(objective(circle_state(4096, 1.0)) == doctest::Approx(ref).epsilon(1e-13));
  const Gradient g = gradient(s);
  const double h = 1e-7;
  OptimState up = s, dn = s;
  up.thetas[17] += h;
  dn.thetas[17] -= h;
  const double fd = (objective(up) - objective(dn)) / (2 * h);
  CHECK(g.thetas[17] == doctest::Approx(fd).epsilon(1e-4));
}

TEST_CASE("one descent step lowers the objective") {
  std::mt19937_64 rng(8);
  OptimState s = random_state(rng, 128);
  s.multipliers = {0.0, 0.0, 0.0};
  s.penalty = 10.0;
  const double before = objective(s);
  const OptimResult r = minimize_energy(s, 1);
  REQUIRE(r.log.size() == 1);
  CHECK(r.log[0].objective < before);
  CHECK_FALSE(r.converged);
}

TEST_CASE("minimizer from the unit circle") {
  check_limit(minimize_energy(circle_state(256, 1.0), 100000));
}

TEST_CASE("minimizer from a perturbed Fourier shape") {
  const auto init = state_from_curve(curve::fourier_shape(3, 4, 0.2), 256);
  CHECK(evaluate(init).violation() < 1e-2);
  check_limit(minimize_energy(init, 100000));
}

TEST_CASE("descent is monotone within each penalty phase") {
  const auto init = state_from_curve(curve::ellipse(3.0, 1.0), 256);
  const OptimResult r = minimize_energy(init, 100000);
  CHECK(r.converged);
  REQUIRE(r.log.size() > 10);
  for (std::size_t i = 1; i < r.log.size(); ++i) {
    if (r.log[i].outer == r.log[i - 1].outer) {
      CHECK(r.log[i].objective < r.log[i - 1].objective);
    }
  }
}

TEST_CASE("rescaling the minimizer keeps the scale-free ratio") {
  const OptimResult r = minimize_energy(circle_state(256, 1.0), 100000);
  curve::PlanarCurve c = curve_of(r.state);
  CHECK(c.closed);
  const double target_area = kPi * std::pow(2.0, -2.0 / 3.0);
  const double lambda = std::sqrt(target_area / r.metrics.A);
  CHECK(lambda == doctest::Approx(1.0).epsilon(1e-4));
  OptimState scaled = r.state;
  scaled.L *= lambda;
  const auto m = metrics_of(scaled);
  CHECK(m.A == doctest::Approx(target_area).epsilon(1e-12));
  CHECK(std::abs(m.EEA / r.metrics.EEA - 1.0) <= 1e-9);
}

TEST_CASE("stationarity residual") {
  curve::CurvatureProfile p;
  p.L = 2.0 * kPi * std::pow(2.0, -1.0 / 3.0);
  p.k.assign(257, std::cbrt(2.0));
  CHECK(stationarity_residual(p) <= 1e-10);

  const auto sol = drop::solve_drop(1e-10);
  CHECK(stationarity_residual(curve::profile_of(sol.curve)) <= 1e-4);

  p.k[100] += 0.1;
  CHECK(stationarity_residual(p) > 1.0);
}

TEST_CASE("profile and curve of a state") {
  const OptimState s = circle_state(128, 2.0);
  const auto p = profile_of(s);
  REQUIRE(p.k.size() == 129);
  CHECK(p.k.front() == doctest::Approx(0.5));
  const auto c = curve_of(s);
  CHECK(c.closed);
  CHECK(c.points.size() == 129);
  const auto m = metrics_of(s);
  CHECK(m.A == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  CHECK(m.circumradius == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("invalid initial states") {
  OptimState s;
  s.thetas = {0.0, 1.0};
  s.L = 1.0;
  CHECK_THROWS_AS(objective(s), ContractViolation);
  OptimState open = circle_state(64, 1.0);
  for (std::size_t i = 0; i < open.nodes(); ++i) open.thetas[i] *= 0.5;
  CHECK_THROWS_AS(minimize_energy(open, 10), ContractViolation);
}
