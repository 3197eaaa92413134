#include "elab/drop.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "elab/elastica.hpp"
#include "elab/error.hpp"
#include "elab/quartic.hpp"

namespace elab::drop {

namespace {
constexpr double kPi = std::numbers::pi;
}

DropCurve build_drop(double C, int intervals) {
  if (!(C > 0.0)) {
    throw DomainError("build_drop_curve: requires C > 0");
  }
  if (intervals < 16 || intervals % 2 != 0) {
    throw DomainError("build_drop_curve: intervals must be even and at least 16");
  }
  const elastica::PeriodData pd = elastica::period_data(C);
  const int half = intervals / 2;
  const std::vector<elastica::PathState> arc =
      elastica::integrate_path({0.0, -std::sqrt(2.0 * C), 0.0, 0.0, 0.0}, pd.s_M, half);

  DropCurve out;
  curve::PlanarCurve& c = out.curve;
  c.length = 2.0 * pd.s_M;
  c.corner_turning = kPi;
  c.points.resize(intervals + 1);
  c.thetas.resize(intervals + 1);
  c.curvatures.resize(intervals + 1);
  out.slopes.resize(intervals + 1);
  const elastica::PathState& apex = arc[half];
  for (int i = 0; i <= half; ++i) {
    const elastica::PathState& p = arc[i];
    c.points[i] = {p.x, p.y};
    c.thetas[i] = p.theta;
    c.curvatures[i] = p.k;
    out.slopes[i] = p.kp;
  }
  // Mirror image across the horizontal line through the apex.
  for (int t = 1; t <= half; ++t) {
    const elastica::PathState& p = arc[half - t];
    c.points[half + t] = {p.x, 2.0 * apex.y - p.y};
    c.thetas[half + t] = kPi - p.theta;
    c.curvatures[half + t] = p.k;
    out.slopes[half + t] = -p.kp;
  }
  c.closed = c.position_gap() <= curve::kClosureTolerance * c.length &&
             c.angle_gap() <= curve::kClosureTolerance;
  return out;
}

curve::PlanarCurve build_drop_curve(double C, int intervals) {
  return build_drop(C, intervals).curve;
}

curve::Point optimality_center(const curve::PlanarCurve& c, std::size_t i) {
  const double k = c.curvatures[i];
  const double th = c.thetas[i];
  return {c.points[i].x - 0.5 * k * k * std::sin(th),
          c.points[i].y + 0.5 * k * k * std::cos(th)};
}

OptimalityResiduals optimality_residuals(const curve::PlanarCurve& c,
                                         const std::vector<double>& slopes, double C,
                                         curve::Point Q, double exclusion) {
  const std::size_t n = c.intervals();
  const double h = c.spacing();
  const auto skip = static_cast<std::size_t>(std::ceil(exclusion * static_cast<double>(n)));
  const std::size_t first = std::max<std::size_t>(1, skip);
  const std::size_t last = std::min(n - 1, n - skip);
  OptimalityResiduals r;
  for (std::size_t i = first; i <= last; ++i) {
    const double k = c.curvatures[i];
    const double kpp =
        (c.curvatures[i + 1] - 2.0 * k + c.curvatures[i - 1]) / (h * h);
    r.B1 = std::max(r.B1, std::abs(kpp + 0.5 * k * k * k - 1.0));
    const double kp = slopes[i];
    r.B2 = std::max(r.B2, std::abs(kp * kp - quartic::evaluate(C, k)));
    const double dx = c.points[i].x - Q.x;
    const double dy = c.points[i].y - Q.y;
    r.B3 = std::max(r.B3, std::abs(dx * dx + dy * dy - 2.0 * k - 2.0 * C));
    const double nu_x = std::sin(c.thetas[i]);
    const double nu_y = -std::cos(c.thetas[i]);
    r.B4 = std::max(r.B4, std::abs(dx * nu_x + dy * nu_y - 0.5 * k * k));
  }
  return r;
}

OptimalityResiduals verify_optimality(const DropSolution& sol) {
  return optimality_residuals(sol.curve, sol.slopes, sol.C_star, sol.Q, kCornerExclusion);
}

DropSolution solve_drop(double tol, int intervals) {
  if (!(tol > 0.0) || tol > 1e-8) {
    throw DomainError("solve_drop: tol must lie in (0, 1e-8]");
  }
  const double target = 0.5 * kPi;
  const auto excess = [target](double C) {
    return elastica::period_data(C).turning - target;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (excess(hi) >= 0.0) {
    hi *= 2.0;
    if (hi > 1e8) {
      throw InfeasibleError("solve_drop: turning never drops below pi/2");
    }
  }
  while (hi - lo > tol * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }

  DropSolution sol;
  sol.C_star = 0.5 * (lo + hi);
  const elastica::PeriodData pd = elastica::period_data(sol.C_star);
  sol.s_m = pd.s_m;
  sol.s_M = pd.s_M;
  sol.k_m = pd.k_m;
  sol.k_M = pd.k_M;
  sol.turning = pd.turning;
  DropCurve built = build_drop(sol.C_star, intervals);
  sol.curve = std::move(built.curve);
  sol.slopes = std::move(built.slopes);
  const curve::ShapeMetrics m = curve::metrics(sol.curve);
  sol.E = m.E;
  sol.A = m.A;
  sol.Q = optimality_center(sol.curve, static_cast<std::size_t>(intervals / 2));
  sol.residuals = verify_optimality(sol);
  return sol;
}

DropBounds drop_bounds_report(const DropSolution& sol) {
  DropBounds b;
  b.E_plus_A = sol.E + sol.A;
  b.disc_value = 3.0 * kPi * std::pow(2.0, -2.0 / 3.0);
  b.length = 2.0 * sol.s_M;
  b.corner_radius = curve::max_distance(sol.curve, sol.curve.points.front());
  b.H = 3.0 * sol.k_M * sol.k_M + 2.0 * sol.k_m * sol.k_M + 3.0 * sol.k_m * sol.k_m;
  b.exceeds_pi = b.E_plus_A > kPi;
  b.exceeds_half_disc = b.E_plus_A > 0.5 * b.disc_value;
  b.two_drops_exceed_disc = 2.0 * b.E_plus_A > b.disc_value;
  b.energy_lower_bound = sol.E >= 0.25 * kPi * std::sqrt(22.0 / 3.0);
  b.length_at_most_146 = b.length <= 146.0;
  b.length_vs_corner_radius =
      b.length <= 8.0 * b.corner_radius * b.corner_radius * sol.E;
  b.H_at_least_22_3 = b.H >= 22.0 / 3.0;
  return b;
}

}  // namespace elab::drop
