#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "elab/critical.hpp"
#include "elab/elastica.hpp"
#include "elab/error.hpp"
#include "elab/quartic.hpp"

using namespace elab;

namespace {

constexpr double kPi = std::numbers::pi;
const double kDisc = 3.0 * kPi * std::pow(2.0, -2.0 / 3.0);

}  // namespace

TEST_CASE("one period is infeasible and reported deterministically") {
  std::string first, second;
  try {
    critical::solve_closed_critical(1);
    FAIL("expected infeasibility");
  } catch (const InfeasibleError& e) {
    first = e.what();
  }
  try {
    critical::solve_closed_critical(1);
  } catch (const InfeasibleError& e) {
    second = e.what();
  }
  CHECK(first == second);
  CHECK(first.find("range") != std::string::npos);
  const auto range = critical::observed_turning_range();
  CHECK(range.at_c_min < 2.0 * kPi);
  CHECK(range.at_c_max > 0.0);
  CHECK(range.at_c_max < range.at_c_min);
}

TEST_CASE("period turning near C_min tends to 2 pi / sqrt(3/2)") {
  // Small oscillations about k = 2^(1/3): T -> 2 pi / omega with omega^2 = 3 k^2 / 2.
  const double k = quartic::kCubeRootTwo;
  const double limit = k * 2.0 * kPi / std::sqrt(1.5 * k * k);
  const auto pd = elastica::period_data(quartic::kCMin + 1e-8);
  CHECK(pd.period_turning == doctest::Approx(limit).epsilon(1e-3));
  CHECK(limit < 2.0 * kPi);
}

TEST_CASE("unsupported period counts") {
  CHECK_THROWS_AS(critical::solve_closed_critical(0), DomainError);
  CHECK_THROWS_AS(critical::solve_closed_critical(4), DomainError);
}

TEST_CASE("two- and three-period critical curves") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    const auto crit = critical::solve_closed_critical(n);
    CHECK(crit.n_periods == n);
    CHECK(std::abs(crit.period_turning - 2.0 * kPi / n) <= 1e-9);
    CHECK(crit.curve.closed);
    CHECK(crit.curve.position_gap() <= 1e-6 * crit.curve.length);
    CHECK(crit.metrics.E + crit.metrics.A > kDisc);
    CHECK(crit.metrics.EEA > kPi * kPi * kPi);
    CHECK(critical::star_shapedness(crit) >= -1e-8);
    // Each period is a full oscillation of k, so the grid sees n maxima.
    int maxima = 0;
    const auto& k = crit.curve.curvatures;
    for (std::size_t i = 1; i + 1 < k.size(); ++i) {
      if (k[i] > k[i - 1] && k[i] >= k[i + 1]) ++maxima;
    }
    CHECK(maxima >= n - 1);
    CHECK(maxima <= n);
  }
}

TEST_CASE("cut-and-reflect surgery lowers E + A") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    const auto crit = critical::solve_closed_critical(n);
    const auto s = critical::surgery_compare(crit);
    CHECK(s.dE <= 1e-9);
    CHECK(s.dA <= 1e-9);
    CHECK(s.dE + s.dA < -1e-6);
    CHECK(s.cap_half_length > 0.0);
    CHECK(s.cap_half_length < crit.period_length / 2);
    CHECK(s.competitor.length == doctest::Approx(crit.curve.length));
  }
}

TEST_CASE("a disc has no cap") {
  critical::ClosedCritical disc;
  disc.n_periods = 2;
  disc.curve = curve::circle(std::pow(2.0, -1.0 / 3.0), 512);
  disc.metrics = curve::metrics(disc.curve);
  CHECK_THROWS_AS(critical::surgery_compare(disc), GeometryError);
}
