#pragma once

#include <vector>

#include "elab/curve.hpp"

// Smooth closed critical curves made of n identical periods of the
// elastica, and the cut-and-reflect surgery that lowers their E + A.

namespace elab::critical {

struct ClosedCritical {
  int n_periods = 0;
  double C = 0.0;
  double period_length = 0.0;
  double period_turning = 0.0;
  curve::PlanarCurve curve;
  std::vector<double> slopes;
  curve::ShapeMetrics metrics;
  curve::Point Q;  ///< centre of the optimality conditions
  std::size_t tip_index = 0;  ///< grid index of the first curvature maximum
};

/// Turning per period over the admissible C range, sampled near C_min and
/// at a large C. Used to explain infeasibility.
struct TurningRange {
  double at_c_min;
  double at_c_max;
  double c_max;
};
TurningRange observed_turning_range();

/// Bisection on C so the period turning is 2 pi / n. Throws InfeasibleError
/// with the observed turning range when no admissible C exists.
ClosedCritical solve_closed_critical(int n_periods, int intervals = 4096);

struct SurgeryResult {
  double dE = 0.0;
  double dA = 0.0;
  double cap_half_length = 0.0;  ///< a: the cap is gamma(l - a .. l + a)
  curve::Point chord_start;
  curve::Point chord_end;
  curve::PlanarCurve competitor;
  curve::ShapeMetrics competitor_metrics;
};

/// Cuts the cap around the first curvature maximum at the chord whose
/// endpoints have normals orthogonal to the axis Q -> gamma(l), and reflects
/// it across that chord. Throws GeometryError when no cap exists.
SurgeryResult surgery_compare(const ClosedCritical& crit);

/// min over the grid of QM . nu.
double star_shapedness(const ClosedCritical& crit);

}  // namespace elab::critical
