#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace elab::quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  /// Integrates f over [a, b] with the affine map of the reference rule.
  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sum += weights[i] * f(mid + half * nodes[i]);
    }
    return half * sum;
  }
};

/// Rule with n points; nodes from Newton iteration on P_n. Cached per n.
const GaussLegendre& gauss_legendre(int n);

/// Composite Simpson rule on a uniform grid with spacing h. An odd number of
/// intervals closes the last three with the 3/8 rule.
double simpson(std::span<const double> values, double h);

/// Adaptive Gauss-Kronrod (15 point) over [a, b], relative tolerance tol.
double adaptive(const std::function<double(double)>& f, double a, double b,
                double tol = 1e-12);

}  // namespace elab::quadrature
