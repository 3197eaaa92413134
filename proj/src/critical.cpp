#include "elab/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "elab/drop.hpp"
#include "elab/elastica.hpp"
#include "elab/error.hpp"
#include "elab/quartic.hpp"

namespace elab::critical {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRangeLow = quartic::kDegenerateEps * 10.0;
constexpr double kRangeHigh = 1e6;

double period_turning(double C) { return elastica::period_data(C).period_turning; }

}  // namespace

TurningRange observed_turning_range() {
  const double lo = quartic::kCMin + kRangeLow;
  return {period_turning(lo), period_turning(kRangeHigh), kRangeHigh};
}

ClosedCritical solve_closed_critical(int n_periods, int intervals) {
  if (n_periods < 1 || n_periods > 3) {
    throw DomainError("solve_closed_critical: n_periods must be 1, 2 or 3");
  }
  const double target = 2.0 * kPi / n_periods;
  double lo = quartic::kCMin + kRangeLow;
  double hi = 1.0;
  const TurningRange range = observed_turning_range();
  if (period_turning(lo) < target) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "solve_closed_critical: no C gives period turning 2pi/" << n_periods << " = "
        << target << "; observed period turning ranges over (" << range.at_c_max << ", "
        << range.at_c_min << ") for C in (C_min, " << range.c_max << "]";
    throw InfeasibleError(msg.str());
  }
  while (period_turning(hi) >= target) {
    hi *= 2.0;
    if (hi > kRangeHigh) {
      throw InfeasibleError("solve_closed_critical: period turning stays above target");
    }
  }
  while (hi - lo > 1e-14 * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    (period_turning(mid) > target ? lo : hi) = mid;
  }

  ClosedCritical crit;
  crit.n_periods = n_periods;
  crit.C = 0.5 * (lo + hi);
  const elastica::PeriodData pd = elastica::period_data(crit.C);
  crit.period_length = pd.T;
  crit.period_turning = pd.period_turning;

  // Grid with an even number of intervals per period so that the curvature
  // extrema fall on nodes.
  const int per = 2 * static_cast<int>(std::ceil(intervals / (2.0 * n_periods)));
  const std::vector<elastica::PathState> arc =
      elastica::integrate_path({pd.k_m, 0.0, 0.0, 0.0, 0.0}, pd.T, per);
  const elastica::PathState& end = arc.back();

  curve::PlanarCurve& c = crit.curve;
  const int total = per * n_periods;
  c.length = pd.T * n_periods;
  c.corner_turning = 0.0;
  c.points.resize(total + 1);
  c.thetas.resize(total + 1);
  c.curvatures.resize(total + 1);
  crit.slopes.resize(total + 1);
  double ox = 0.0;
  double oy = 0.0;
  double rot = 0.0;
  for (int j = 0; j < n_periods; ++j) {
    const double cr = std::cos(rot);
    const double sr = std::sin(rot);
    for (int i = (j == 0 ? 0 : 1); i <= per; ++i) {
      const elastica::PathState& p = arc[i];
      const int idx = j * per + i;
      c.points[idx] = {ox + cr * p.x - sr * p.y, oy + sr * p.x + cr * p.y};
      c.thetas[idx] = p.theta + rot;
      c.curvatures[idx] = p.k;
      crit.slopes[idx] = p.kp;
    }
    ox += cr * end.x - sr * end.y;
    oy += sr * end.x + cr * end.y;
    rot += end.theta;
  }
  c.closed = c.position_gap() <= curve::kClosureTolerance * c.length &&
             c.angle_gap() <= curve::kClosureTolerance;
  if (!c.closed) {
    std::ostringstream msg;
    msg << "solve_closed_critical: assembled curve fails closure (gap "
        << c.position_gap() << ", angle gap " << c.angle_gap() << ")";
    throw GeometryError(msg.str());
  }
  crit.tip_index = static_cast<std::size_t>(per / 2);
  crit.Q = drop::optimality_center(c, crit.tip_index);
  crit.metrics = curve::metrics(c);
  return crit;
}

double star_shapedness(const ClosedCritical& crit) {
  double lowest = std::numeric_limits<double>::infinity();
  const curve::PlanarCurve& c = crit.curve;
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const double dx = c.points[i].x - crit.Q.x;
    const double dy = c.points[i].y - crit.Q.y;
    lowest = std::min(lowest, dx * std::sin(c.thetas[i]) - dy * std::cos(c.thetas[i]));
  }
  return lowest;
}

namespace {

// Position at arc length s by cubic Hermite interpolation of the grid with
// unit tangents as derivatives.
curve::Point position_at(const curve::PlanarCurve& c, double s) {
  const double h = c.spacing();
  const auto n = static_cast<double>(c.intervals());
  const double u = std::clamp(s / h, 0.0, n);
  const auto i = std::min(static_cast<std::size_t>(u), c.intervals() - 1);
  const double t = u - static_cast<double>(i);
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  const curve::Point& a = c.points[i];
  const curve::Point& b = c.points[i + 1];
  return {h00 * a.x + h10 * h * std::cos(c.thetas[i]) + h01 * b.x +
              h11 * h * std::cos(c.thetas[i + 1]),
          h00 * a.y + h10 * h * std::sin(c.thetas[i]) + h01 * b.y +
              h11 * h * std::sin(c.thetas[i + 1])};
}

}  // namespace

SurgeryResult surgery_compare(const ClosedCritical& crit) {
  const curve::PlanarCurve& c = crit.curve;
  const auto [kmin, kmax] = std::minmax_element(c.curvatures.begin(), c.curvatures.end());
  if (*kmax - *kmin < 1e-9) {
    throw GeometryError("surgery_compare: constant curvature, no distinguished cap");
  }
  if (crit.n_periods < 2) {
    throw GeometryError(
        "surgery_compare: cut-and-reflect needs at least two periods; no closed one-period "
        "critical curve exists");
  }
  const std::size_t l = crit.tip_index;
  const double h = c.spacing();
  const double ax = c.points[l].x - crit.Q.x;
  const double ay = c.points[l].y - crit.Q.y;
  const double norm = std::hypot(ax, ay);
  const double ux = ax / norm;
  const double uy = ay / norm;
  // nu . axis along the arc, walking back from the tip.
  const auto normal_dot = [&](std::size_t i) {
    return std::sin(c.thetas[i]) * ux - std::cos(c.thetas[i]) * uy;
  };
  double s_cut = -1.0;
  for (std::size_t i = l; i > 0; --i) {
    const double g1 = normal_dot(i);
    const double g0 = normal_dot(i - 1);
    if (g1 > 0.0 && g0 <= 0.0) {
      s_cut = h * (static_cast<double>(i - 1) + g0 / (g0 - g1));
      break;
    }
  }
  if (s_cut < 0.0) {
    throw GeometryError("surgery_compare: no point with normal orthogonal to the axis");
  }
  const double s_tip = h * static_cast<double>(l);
  SurgeryResult result;
  result.cap_half_length = s_tip - s_cut;
  const double s_end = s_tip + result.cap_half_length;
  result.chord_start = position_at(c, s_cut);
  result.chord_end = position_at(c, s_end);

  const double dx = result.chord_end.x - result.chord_start.x;
  const double dy = result.chord_end.y - result.chord_start.y;
  const double dl = std::hypot(dx, dy);
  const double ex = dx / dl;
  const double ey = dy / dl;
  const double chord_angle = std::atan2(ey, ex);

  result.competitor = c;
  curve::PlanarCurve& comp = result.competitor;
  for (std::size_t i = 0; i < comp.points.size(); ++i) {
    const double s = h * static_cast<double>(i);
    if (s <= s_cut || s >= s_end) {
      continue;
    }
    const double vx = c.points[i].x - result.chord_start.x;
    const double vy = c.points[i].y - result.chord_start.y;
    const double along = vx * ex + vy * ey;
    comp.points[i] = {result.chord_start.x + 2.0 * along * ex - vx,
                      result.chord_start.y + 2.0 * along * ey - vy};
    comp.thetas[i] = 2.0 * chord_angle - c.thetas[i];
    comp.curvatures[i] = -c.curvatures[i];
  }
  result.competitor_metrics = curve::metrics(comp);
  result.dE = result.competitor_metrics.E - crit.metrics.E;
  result.dA = result.competitor_metrics.A - crit.metrics.A;
  return result;
}

}  // namespace elab::critical
