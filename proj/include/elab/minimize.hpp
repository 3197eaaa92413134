#pragma once

#include <array>
#include <vector>

#include "elab/curve.hpp"

// Direct minimization of E + A over closed curves given by tangent angles
// at N + 1 uniform nodes. Between nodes the angle is linear, so each grid
// segment is a circular arc of curvature (theta_{i+1} - theta_i) / h and E,
// A and the closure vector are exact for the discrete curve.

namespace elab::minimize {

struct OptimState {
  /// N + 1 node angles; thetas[N] == thetas[0] + 2 pi is kept by construction.
  std::vector<double> thetas;
  double L = 0.0;
  /// Closure x, closure y, total turning. The turning constraint is
  /// eliminated by the pinned endpoint, so its multiplier stays zero.
  std::array<double, 3> multipliers{0.0, 0.0, 0.0};
  double penalty = 10.0;

  std::size_t nodes() const { return thetas.size() - 1; }
};

struct Evaluation {
  double E = 0.0;
  double A = 0.0;
  double closure_x = 0.0;
  double closure_y = 0.0;
  double value = 0.0;  ///< E + A + multiplier and penalty terms
  double violation() const;
};

/// Augmented Lagrangian E + A + lambda . c + penalty/2 |c|^2.
double objective(const OptimState& state);
Evaluation evaluate(const OptimState& state);

struct Gradient {
  std::vector<double> thetas;  ///< d/dtheta_i for i < N (theta_N follows theta_0)
  double L = 0.0;
  double norm() const;
};

Gradient gradient(const OptimState& state);

struct IterationLog {
  int iter;
  int outer;
  double objective;
  double E;
  double A;
  double violation;
  double step;
};

struct OptimResult {
  curve::ShapeMetrics metrics;
  double stationarity_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
  double violation = 0.0;
  double curvature_stddev = 0.0;
  OptimState state;
  std::vector<IterationLog> log;
};

struct Options {
  double gradient_tol = 1e-6;
  double violation_tol = 1e-8;
  double penalty_start = 10.0;
  double penalty_factor = 10.0;
  double penalty_cap = 1e6;
};

/// Augmented-Lagrangian outer loop around gradient descent with
/// Barzilai-Borwein trial steps and Armijo backtracking.
OptimResult minimize_energy(const OptimState& init, int max_iter, const Options& opts = {});

/// sup over interior nodes of |k'' + k^3/2 - 1| with second differences.
double stationarity_residual(const curve::CurvatureProfile& profile);

/// Segment curvatures of a state as a closed profile.
curve::CurvatureProfile profile_of(const OptimState& state);
curve::PlanarCurve curve_of(const OptimState& state);
curve::ShapeMetrics metrics_of(const OptimState& state);

OptimState circle_state(int nodes, double radius);
/// Samples the tangent angles of a smooth closed curve at N + 1 nodes.
OptimState state_from_curve(const curve::PlanarCurve& curve, int nodes);

}  // namespace elab::minimize
