#pragma once

#include <vector>

#include "elab/curve.hpp"

// The optimal drop: a closed curve, smooth except for one corner where the
// tangent reverses, solving k'' = -k^3/2 + 1 with k(0) = 0, k'(0) = -sqrt(2C).
// C is found by shooting on the half-arc turning I(C) = pi/2.

namespace elab::drop {

struct OptimalityResiduals {
  double B1 = 0.0;  ///< k'' + k^3/2 - 1 (second differences)
  double B2 = 0.0;  ///< k'^2 + k^4/4 - 2k - 2C
  double B3 = 0.0;  ///< |QM|^2 - 2k - 2C
  double B4 = 0.0;  ///< QM . nu - k^2/2
};

struct DropSolution {
  double C_star = 0.0;
  double s_m = 0.0;
  double s_M = 0.0;  ///< half the drop length
  double k_m = 0.0;
  double k_M = 0.0;
  double turning = 0.0;  ///< I(C_star)
  curve::PlanarCurve curve;
  std::vector<double> slopes;  ///< k' at the grid nodes
  double E = 0.0;
  double A = 0.0;
  curve::Point Q;
  OptimalityResiduals residuals;
};

inline constexpr int kDropIntervals = 4096;
inline constexpr double kCornerExclusion = 0.01;

/// Bisection on C over (0, C_hi] to |C - C*| <= tol * max(1, C*).
DropSolution solve_drop(double tol = 1e-10, int intervals = kDropIntervals);

struct DropCurve {
  curve::PlanarCurve curve;
  std::vector<double> slopes;
};

/// Integrates [0, s_M] from the corner at the origin with theta(0) = 0 and
/// mirrors it with theta(s_M + t) = pi - theta(s_M - t) for [s_M, 2 s_M].
DropCurve build_drop(double C, int intervals = kDropIntervals);
curve::PlanarCurve build_drop_curve(double C, int intervals = kDropIntervals);

/// Optimality centre: M(s) - k^2/2 nu(s) at the curvature maximum, with nu
/// the outward normal (sin theta, -cos theta).
curve::Point optimality_center(const curve::PlanarCurve& curve, std::size_t max_index);

/// Sup-norm residuals of (B1)-(B4) over the grid, skipping a fraction
/// `exclusion` of the arc length next to the base point at each end.
OptimalityResiduals optimality_residuals(const curve::PlanarCurve& curve,
                                         const std::vector<double>& slopes, double C,
                                         curve::Point Q, double exclusion);

OptimalityResiduals verify_optimality(const DropSolution& sol);

struct DropBounds {
  double E_plus_A = 0.0;
  double disc_value = 0.0;  ///< 3 pi 2^(-2/3)
  double length = 0.0;      ///< 2 s_M
  double corner_radius = 0.0;
  double H = 0.0;  ///< 3 k_M^2 + 2 k_m k_M + 3 k_m^2
  bool exceeds_pi = false;
  bool exceeds_half_disc = false;
  bool two_drops_exceed_disc = false;
  bool energy_lower_bound = false;  ///< E >= (pi/4) sqrt(22/3)
  bool length_at_most_146 = false;
  bool length_vs_corner_radius = false;  ///< L <= 8 R^2 E
  bool H_at_least_22_3 = false;

  bool all() const {
    return exceeds_pi && exceeds_half_disc && two_drops_exceed_disc && energy_lower_bound &&
           length_at_most_146 && length_vs_corner_radius && H_at_least_22_3;
  }
};

DropBounds drop_bounds_report(const DropSolution& sol);

}  // namespace elab::drop
