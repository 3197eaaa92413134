#include "elab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "elab/error.hpp"
#include "elab/quadrature.hpp"

namespace elab::curve {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double PlanarCurve::position_gap() const {
  const Point& a = points.front();
  const Point& b = points.back();
  return std::hypot(b.x - a.x, b.y - a.y);
}

double PlanarCurve::angle_gap() const {
  return std::abs(thetas.back() - thetas.front() - (kTwoPi - corner_turning));
}

std::vector<double> cumulative_integral(const std::vector<double>& f, double h,
                                        double initial) {
  const std::size_t n = f.size() - 1;
  std::vector<double> out(f.size());
  out[0] = initial;
  if (n < 3) {
    for (std::size_t i = 0; i < n; ++i) {
      out[i + 1] = out[i] + 0.5 * h * (f[i] + f[i + 1]);
    }
    return out;
  }
  const double c = h / 24.0;
  out[1] = out[0] + c * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
  for (std::size_t i = 1; i + 2 <= n; ++i) {
    out[i + 1] = out[i] + c * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]);
  }
  out[n] = out[n - 1] +
           c * (f[n - 3] - 5.0 * f[n - 2] + 19.0 * f[n - 1] + 9.0 * f[n]);
  return out;
}

PlanarCurve reconstruct(const CurvatureProfile& profile, Point start,
                        double corner_turning) {
  if (profile.intervals() < 16 || !(profile.L > 0.0)) {
    throw ContractViolation("reconstruct: profile needs L > 0 and at least 16 intervals");
  }
  const double h = profile.spacing();
  PlanarCurve curve;
  curve.length = profile.L;
  curve.curvatures = profile.k;
  curve.corner_turning = corner_turning;
  curve.thetas = cumulative_integral(profile.k, h, profile.theta0);

  std::vector<double> c(curve.thetas.size());
  std::vector<double> s(curve.thetas.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = std::cos(curve.thetas[i]);
    s[i] = std::sin(curve.thetas[i]);
  }
  const std::vector<double> xs = cumulative_integral(c, h, start.x);
  const std::vector<double> ys = cumulative_integral(s, h, start.y);
  curve.points.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    curve.points[i] = {xs[i], ys[i]};
  }
  curve.closed = curve.position_gap() <= kClosureTolerance * curve.length &&
                 curve.angle_gap() <= kClosureTolerance;
  return curve;
}

CurvatureProfile profile_of(const PlanarCurve& curve) {
  return {curve.length, curve.thetas.front(), curve.curvatures};
}

double elastic_energy(const PlanarCurve& curve) {
  std::vector<double> half_sq(curve.curvatures.size());
  std::transform(curve.curvatures.begin(), curve.curvatures.end(), half_sq.begin(),
                 [](double k) { return 0.5 * k * k; });
  return quadrature::simpson(half_sq, curve.spacing());
}

double shoelace_area(const std::vector<Point>& p) {
  double sum = 0.0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = p[i];
    const Point& b = p[(i + 1) % n];
    sum += a.x * b.y - b.x * a.y;
  }
  return 0.5 * sum;
}

namespace {

// Area between a circular arc of length h and curvature k and its chord,
// signed positive when the arc bulges to the right of the travel direction.
double arc_segment_area(double k, double h) {
  const double x = k * h;
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return k * h * h * h / 12.0 * (1.0 - x2 / 20.0 + x2 * x2 / 840.0);
  }
  return (x - std::sin(x)) / (2.0 * k * k);
}

}  // namespace

double enclosed_area(const PlanarCurve& curve) {
  const double h = curve.spacing();
  double area = shoelace_area(curve.points);
  for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
    const double k = 0.5 * (curve.curvatures[i] + curve.curvatures[i + 1]);
    area += arc_segment_area(k, h);
  }
  return area;
}

Point centroid(const PlanarCurve& curve) {
  const std::size_t n = curve.closed ? curve.points.size() - 1 : curve.points.size();
  Point c;
  for (std::size_t i = 0; i < n; ++i) {
    c.x += curve.points[i].x;
    c.y += curve.points[i].y;
  }
  c.x /= static_cast<double>(n);
  c.y /= static_cast<double>(n);
  return c;
}

double max_distance(const PlanarCurve& curve, Point center) {
  double r = 0.0;
  for (const Point& p : curve.points) {
    r = std::max(r, std::hypot(p.x - center.x, p.y - center.y));
  }
  return r;
}

bool is_convex(const PlanarCurve& curve, double threshold) {
  return std::all_of(curve.curvatures.begin(), curve.curvatures.end(),
                     [threshold](double k) { return k >= threshold; });
}

ShapeMetrics metrics(const PlanarCurve& curve) {
  if (!curve.closed) {
    throw ContractViolation("metrics: curve is not closed");
  }
  ShapeMetrics m;
  m.E = elastic_energy(curve);
  m.A = enclosed_area(curve);
  m.Lperim = curve.length;
  m.EEA = m.E * m.E * m.A;
  m.gage_ratio = m.E * m.A / m.Lperim;
  m.circumradius = max_distance(curve, centroid(curve));
  return m;
}

PlanarCurve scaled(const PlanarCurve& curve, double factor) {
  PlanarCurve out = curve;
  for (Point& p : out.points) {
    p.x *= factor;
    p.y *= factor;
  }
  for (double& k : out.curvatures) {
    k /= factor;
  }
  out.length *= factor;
  return out;
}

PlanarCurve reversed(const PlanarCurve& curve) {
  PlanarCurve out = curve;
  std::reverse(out.points.begin(), out.points.end());
  std::reverse(out.thetas.begin(), out.thetas.end());
  std::reverse(out.curvatures.begin(), out.curvatures.end());
  for (double& t : out.thetas) {
    t += std::numbers::pi;
  }
  for (double& k : out.curvatures) {
    k = -k;
  }
  return out;
}

PlanarCurve translated(const PlanarCurve& curve, Point offset) {
  PlanarCurve out = curve;
  for (Point& p : out.points) {
    p.x += offset.x;
    p.y += offset.y;
  }
  return out;
}

}  // namespace elab::curve
