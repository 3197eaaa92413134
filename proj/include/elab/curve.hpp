#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace elab::curve {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Curvature sampled on a uniform arc-length grid over [0, L].
struct CurvatureProfile {
  double L = 0.0;
  double theta0 = 0.0;
  std::vector<double> k;  // intervals() + 1 samples

  std::size_t intervals() const { return k.empty() ? 0 : k.size() - 1; }
  double spacing() const { return L / static_cast<double>(intervals()); }
};

/// Arc-length sampled planar curve. A closed curve repeats its first point
/// as the last sample.
struct PlanarCurve {
  std::vector<Point> points;
  std::vector<double> thetas;
  std::vector<double> curvatures;
  double length = 0.0;
  bool closed = false;
  /// Exterior angle at the base point: 0 for smooth loops, pi for drops.
  double corner_turning = 0.0;

  std::size_t intervals() const { return points.empty() ? 0 : points.size() - 1; }
  double spacing() const { return length / static_cast<double>(intervals()); }
  double position_gap() const;
  /// |theta(L) - theta(0) - (2 pi - corner_turning)|
  double angle_gap() const;
};

struct ShapeMetrics {
  double E = 0.0;
  double A = 0.0;
  double Lperim = 0.0;
  double EEA = 0.0;
  double gage_ratio = 0.0;
  double circumradius = 0.0;  ///< about the centroid of the grid points
};

inline constexpr double kClosureTolerance = 1e-6;

/// Tangent angle by cumulative fourth-order integration of k, positions by
/// the same rule applied to (cos theta, sin theta). The result is flagged
/// closed when both closure gaps are within tolerance for the given corner.
PlanarCurve reconstruct(const CurvatureProfile& profile, Point start = {},
                        double corner_turning = 0.0);

/// Cumulative integral of uniformly sampled values, fourth-order accurate.
std::vector<double> cumulative_integral(const std::vector<double>& values, double h,
                                        double initial = 0.0);

CurvatureProfile profile_of(const PlanarCurve& curve);

/// E, A, L and derived ratios. Throws ContractViolation for open curves.
ShapeMetrics metrics(const PlanarCurve& curve);

double elastic_energy(const PlanarCurve& curve);
/// Plain polygon area 1/2 sum (x_i y_{i+1} - x_{i+1} y_i).
double shoelace_area(const std::vector<Point>& points);
/// Shoelace plus, for every grid segment, the area between the chord and a
/// circular arc of the grid length with the segment's mean curvature.
double enclosed_area(const PlanarCurve& curve);
Point centroid(const PlanarCurve& curve);
double max_distance(const PlanarCurve& curve, Point center);
bool is_convex(const PlanarCurve& curve, double threshold = -1e-9);

PlanarCurve scaled(const PlanarCurve& curve, double factor);
PlanarCurve reversed(const PlanarCurve& curve);
PlanarCurve translated(const PlanarCurve& curve, Point offset);

// ---- generators ------------------------------------------------------------

inline constexpr int kGeneratorIntervals = 1024;
inline constexpr int kMetricIntervals = 4096;

PlanarCurve circle(double radius, int intervals = kMetricIntervals, Point center = {});
PlanarCurve ellipse(double a, double b, int intervals = kMetricIntervals);

/// Star-shaped curve r(phi) = 1 + sum_{n=2}^{modes} (a_n cos n phi + b_n sin n phi)
/// with coefficients uniform in [-amplitude, amplitude]. Throws RejectionError
/// if r drops below 0.1.
PlanarCurve fourier_shape(std::uint64_t seed, int modes, double amplitude,
                          int intervals = kGeneratorIntervals);

/// Two unit lobes joined by a neck of half-width 1/neck_length^2 and length
/// neck_length, with circular fillets at the four junctions. Uses a grid
/// fine enough that the piecewise-constant curvature integrates accurately
/// unless `intervals` is given.
PlanarCurve dumbbell(double neck_length, int intervals = 0);
inline constexpr double kDumbbellFilletRadius = 0.5;

struct EnergyArea {
  double E;
  double A;
};

/// Annulus R < |x| < R + 1/R (closed forms; not a Jordan domain).
EnergyArea ring_metrics(double R);
/// Subgraph of exp(-alpha x^2 / 2) (unbounded; E by adaptive quadrature).
EnergyArea gaussian_metrics(double alpha);

}  // namespace elab::curve
