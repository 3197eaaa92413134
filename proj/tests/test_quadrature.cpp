#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "elab/quadrature.hpp"

using namespace elab::quadrature;

TEST_CASE("gauss-legendre weights sum to the interval length") {
  for (int n : {2, 5, 16, 128, 256}) {
    const GaussLegendre& g = gauss_legendre(n);
    REQUIRE(g.size() == static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double w : g.weights) sum += w;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("gauss-legendre is exact to degree 2n-1") {
  const GaussLegendre& g = gauss_legendre(6);
  for (int deg = 0; deg <= 11; ++deg) {
    const double got = g.integrate([deg](double x) { return std::pow(x, deg); }, 0.0, 1.0);
    CHECK(got == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-14));
  }
}

TEST_CASE("gauss-legendre on smooth periodic integrands") {
  const double got = gauss_legendre(64).integrate([](double x) { return std::sin(x); }, 0.0,
                                                  std::numbers::pi);
  CHECK(std::abs(got - 2.0) < 1e-14);
}

TEST_CASE("simpson is exact for cubics with even and odd interval counts") {
  for (int n : {8, 9, 3, 2}) {
    const double h = 2.0 / n;
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) {
      const double x = i * h;
      v[i] = x * x * x - 2.0 * x + 1.0;
    }
    CHECK(simpson(v, h) == doctest::Approx(4.0 - 4.0 + 2.0).epsilon(1e-14));
  }
}

TEST_CASE("adaptive gauss-kronrod") {
  const double got = adaptive([](double x) { return std::exp(-x * x); }, 0.0, 10.0);
  CHECK(std::abs(got - 0.5 * std::sqrt(std::numbers::pi)) < 1e-13);
}
