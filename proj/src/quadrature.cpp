#include "elab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace elab::quadrature {

namespace {

GaussLegendre build_rule(int n) {
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) {
        break;
      }
    }
    // Recompute the derivative at the converged node for the weight.
    double p1 = 1.0;
    double p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    dp = n * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1) {
    throw std::invalid_argument("gauss_legendre: n must be positive");
  }
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, build_rule(n)).first;
  }
  return it->second;
}

double simpson(std::span<const double> values, double h) {
  const std::size_t n = values.size() - 1;
  if (values.size() < 2) {
    return 0.0;
  }
  if (n == 1) {
    return 0.5 * h * (values[0] + values[1]);
  }
  std::size_t even_end = (n % 2 == 0) ? n : n - 3;
  double sum = 0.0;
  if (even_end > 0) {
    double acc = values[0] + values[even_end];
    for (std::size_t i = 1; i < even_end; ++i) {
      acc += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
    }
    sum = acc * h / 3.0;
  }
  if (even_end != n) {
    const std::size_t j = even_end;
    sum += 3.0 * h / 8.0 *
           (values[j] + 3.0 * values[j + 1] + 3.0 * values[j + 2] + values[j + 3]);
  }
  return sum;
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                double tol) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15,
                                                                       tol);
}

}  // namespace elab::quadrature
