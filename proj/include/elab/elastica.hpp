#pragma once

#include <optional>
#include <vector>

#include "elab/quartic.hpp"

// One period of the penalized elastica k'' = -k^3/2 + 1 with first integral
// k'^2 = P_C(k). Arc-length integrals over curvature ranges become
// integrals of u^m / sqrt(P_C(u)) du with square-root singularities at the
// roots of P_C; these are removed analytically by u = mid + half*sin(phi).

namespace elab::elastica {

inline constexpr int kDefaultNodes = 128;
inline constexpr int kVerificationNodes = 256;

/// Integral of u^moment / sqrt(P_C(u)) over [lo, hi] within [k_m, k_M].
double singular_integral(const quartic::QuarticRoots& roots, int moment, double lo,
                         double hi, int nodes = kDefaultNodes);
double singular_integral(double C, int moment, double lo, double hi,
                         int nodes = kDefaultNodes);

/// Integral of x^moment / sqrt((k_M - x)(x - k_m)) over [k_m, k_M] by the same
/// substitution, under which the weight becomes d(phi).
double sqrt_weight_integral(double k_m, double k_M, int moment, int nodes = kDefaultNodes);

/// Closed form of the integral of x^2 / sqrt((k_M - x)(x - k_m)) over [k_m, k_M].
double reference_sqrt_integral(double k_m, double k_M);

struct PeriodData {
  double C;
  double k_m;
  double k_M;
  double T;               ///< arc length of one period
  double period_turning;  ///< integral of k over one period
  double energy;          ///< 1/2 integral of k^2 over one period
  // Quantities of the drop half-arc, which starts at k = 0 with k' < 0.
  // They exist only when k changes sign (C >= 0) and are NaN otherwise.
  double s_m;      ///< arc length from the start to the curvature minimum
  double s_M;      ///< arc length from the start to the curvature maximum
  double turning;  ///< integral of k over [0, s_M]: I(C) = I1 + 2 I2
  double I1;
  double I2;
};

PeriodData period_data(double C, int nodes = kDefaultNodes);

/// dI/dC for C > 0 from the differentiated integrals of I1 and I2.
double turning_derivative(double C, int nodes = kDefaultNodes);

struct OdeSample {
  double s;
  double k;
  double kp;
};

struct Extremum {
  double s;
  double k;
  bool is_max;
};

struct OdeTrace {
  double C;
  double step;
  std::vector<OdeSample> samples;
  double drift;  ///< max |k'^2 + k^4/4 - 2k - 2C| over the samples
  std::vector<Extremum> extrema;

  /// Mean spacing of consecutive maxima (minima if fewer than two maxima).
  std::optional<double> measured_period() const;
};

/// Classical fixed-step RK4 on (k, k'). Extrema are located by a sign change
/// of k' and bisection on the cubic Hermite interpolant of k'.
OdeTrace integrate_ode(double C, double k0, double k0prime, double s_end,
                       double step);

/// Full state of an elastica arc: curvature, its derivative, tangent angle
/// and position.
struct PathState {
  double k;
  double kp;
  double theta;
  double x;
  double y;
};

/// Integrates the arc with RK4 and returns `intervals + 1` states on a
/// uniform grid over [0, length]. Each grid interval is split into enough
/// substeps to keep the RK4 step at or below `max_substep`.
std::vector<PathState> integrate_path(const PathState& start, double length,
                                      int intervals, double max_substep = 1e-4);

}  // namespace elab::elastica
