#include "elab/elastica.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "elab/error.hpp"
#include "elab/quadrature.hpp"

namespace elab::elastica {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ipow(double u, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) {
    r *= u;
  }
  return r;
}

// Angle of u in the substitution u = mid + half*sin(phi). atan2 keeps full
// precision when u sits next to a root.
double angle_of(const quartic::QuarticRoots& r, double u) {
  const double mid = 0.5 * (r.k_m + r.k_M);
  const double prod = std::max(0.0, (u - r.k_m) * (r.k_M - u));
  return std::atan2(u - mid, std::sqrt(prod));
}

}  // namespace

double singular_integral(const quartic::QuarticRoots& r, int moment, double lo,
                         double hi, int nodes) {
  if (moment < 0 || moment > 4) {
    throw DomainError("singular_integral: moment must lie in 0..4");
  }
  const double scale = std::max({1.0, std::abs(r.k_m), std::abs(r.k_M)});
  const double slack = 1e-14 * scale;
  if (lo < r.k_m - slack || hi > r.k_M + slack || lo > hi + slack) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "singular_integral: [" << lo << ", " << hi << "] is not inside [k_m, k_M] = ["
        << r.k_m << ", " << r.k_M << "] for C = " << r.C;
    throw DomainError(msg.str());
  }
  if (lo >= hi) {
    return 0.0;
  }
  const double mid = 0.5 * (r.k_m + r.k_M);
  const double half = 0.5 * (r.k_M - r.k_m);
  const double a = angle_of(r, std::clamp(lo, r.k_m, r.k_M));
  const double b = angle_of(r, std::clamp(hi, r.k_m, r.k_M));
  // du / sqrt(P) = 2 dphi / sqrt(q(u)) after the substitution.
  const auto integrand = [&](double phi) {
    const double u = mid + half * std::sin(phi);
    return 2.0 * ipow(u, moment) / std::sqrt(r.q(u));
  };
  return quadrature::gauss_legendre(nodes).integrate(integrand, a, b);
}

double singular_integral(double C, int moment, double lo, double hi, int nodes) {
  return singular_integral(quartic::roots(C), moment, lo, hi, nodes);
}

double sqrt_weight_integral(double k_m, double k_M, int moment, int nodes) {
  if (!(k_m < k_M) || moment < 0) {
    throw DomainError("sqrt_weight_integral: needs k_m < k_M and moment >= 0");
  }
  const double mid = 0.5 * (k_m + k_M);
  const double half = 0.5 * (k_M - k_m);
  const auto integrand = [&](double phi) { return ipow(mid + half * std::sin(phi), moment); };
  return quadrature::gauss_legendre(nodes).integrate(integrand, -0.5 * std::numbers::pi,
                                                     0.5 * std::numbers::pi);
}

double reference_sqrt_integral(double k_m, double k_M) {
  return 0.5 * std::numbers::pi *
         (3.0 * k_M * k_M + 2.0 * k_m * k_M + 3.0 * k_m * k_m) / 4.0;
}

PeriodData period_data(double C, int nodes) {
  const quartic::QuarticRoots r = quartic::roots(C);
  PeriodData d{};
  d.C = C;
  d.k_m = r.k_m;
  d.k_M = r.k_M;
  d.T = 2.0 * singular_integral(r, 0, r.k_m, r.k_M, nodes);
  d.period_turning = 2.0 * singular_integral(r, 1, r.k_m, r.k_M, nodes);
  d.energy = singular_integral(r, 2, r.k_m, r.k_M, nodes);
  if (C >= 0.0) {
    const double zero = std::max(0.0, r.k_m);
    d.I1 = singular_integral(r, 1, zero, r.k_M, nodes);
    d.I2 = singular_integral(r, 1, r.k_m, zero, nodes);
    d.turning = d.I1 + 2.0 * d.I2;
    d.s_m = singular_integral(r, 0, r.k_m, zero, nodes);
    d.s_M = 2.0 * d.s_m + singular_integral(r, 0, zero, r.k_M, nodes);
  } else {
    d.I1 = d.I2 = d.turning = d.s_m = d.s_M = kNaN;
  }
  return d;
}

namespace {

// d/dC of k^2 * integral_0^1 x / sqrt(P_C(kx)) dx for a root k of P_C, after
// x = 1 - t^2 absorbs the singularity at x = 1.
double root_integral_derivative(const quartic::QuarticRoots& r, double k, bool at_max,
                                int nodes) {
  const double denom = k * k * k - 2.0;
  const auto integrand = [&](double t) {
    const double x = 1.0 - t * t;
    const double u = k * x;
    const double g = at_max ? r.k_M * (u - r.k_m) * r.q(u)
                            : -r.k_m * (r.k_M - u) * r.q(u);
    return -96.0 * k * k * x / (denom * g * std::sqrt(g));
  };
  return quadrature::gauss_legendre(nodes).integrate(integrand, 0.0, 1.0);
}

}  // namespace

double turning_derivative(double C, int nodes) {
  if (!(C > 0.0)) {
    throw DomainError("turning_derivative: requires C > 0 (drop regime)");
  }
  const quartic::QuarticRoots r = quartic::roots(C);
  const double dI1 = root_integral_derivative(r, r.k_M, true, nodes);
  const double dI2 = -root_integral_derivative(r, r.k_m, false, nodes);
  return dI1 + 2.0 * dI2;
}

std::optional<double> OdeTrace::measured_period() const {
  std::vector<double> maxima;
  std::vector<double> minima;
  for (const Extremum& e : extrema) {
    (e.is_max ? maxima : minima).push_back(e.s);
  }
  const std::vector<double>& use = maxima.size() >= 2 ? maxima : minima;
  if (use.size() < 2) {
    return std::nullopt;
  }
  return (use.back() - use.front()) / static_cast<double>(use.size() - 1);
}

namespace {

double accel(double k) { return 1.0 - 0.5 * k * k * k; }

void rk4_step(double& k, double& kp, double h) {
  const double a1 = kp;
  const double b1 = accel(k);
  const double a2 = kp + 0.5 * h * b1;
  const double b2 = accel(k + 0.5 * h * a1);
  const double a3 = kp + 0.5 * h * b2;
  const double b3 = accel(k + 0.5 * h * a2);
  const double a4 = kp + h * b3;
  const double b4 = accel(k + h * a3);
  k += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
  kp += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
}

struct Hermite {
  double s0, h, y0, y1, d0, d1;
  double operator()(double s) const {
    const double t = (s - s0) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
  }
};

}  // namespace

OdeTrace integrate_ode(double C, double k0, double k0prime, double s_end, double step) {
  if (!(step > 0.0) || !(s_end > 0.0)) {
    throw DomainError("integrate_ode: step and s_end must be positive");
  }
  OdeTrace trace;
  trace.C = C;
  trace.step = step;
  const auto n = static_cast<std::size_t>(std::ceil(s_end / step - 1e-9));
  trace.samples.reserve(n + 1);
  double k = k0;
  double kp = k0prime;
  trace.samples.push_back({0.0, k, kp});
  for (std::size_t i = 1; i <= n; ++i) {
    rk4_step(k, kp, step);
    trace.samples.push_back({static_cast<double>(i) * step, k, kp});
  }

  double drift = 0.0;
  for (const OdeSample& p : trace.samples) {
    drift = std::max(drift, std::abs(p.kp * p.kp - quartic::evaluate(C, p.k)));
  }
  trace.drift = drift;

  for (std::size_t i = 0; i + 1 < trace.samples.size(); ++i) {
    const OdeSample& a = trace.samples[i];
    const OdeSample& b = trace.samples[i + 1];
    if (a.kp == 0.0 || (a.kp > 0.0) == (b.kp > 0.0) || b.kp == 0.0) {
      continue;
    }
    const Hermite slope{a.s, step, a.kp, b.kp, accel(a.k), accel(b.k)};
    double lo = a.s;
    double hi = b.s;
    const bool lo_positive = a.kp > 0.0;
    while (hi - lo > 1e-12) {
      const double m = 0.5 * (lo + hi);
      if ((slope(m) > 0.0) == lo_positive) {
        lo = m;
      } else {
        hi = m;
      }
    }
    const double s = 0.5 * (lo + hi);
    const Hermite value{a.s, step, a.k, b.k, a.kp, b.kp};
    trace.extrema.push_back({s, value(s), lo_positive});
  }
  return trace;
}

namespace {

PathState derivative(const PathState& p) {
  return {p.kp, accel(p.k), p.k, std::cos(p.theta), std::sin(p.theta)};
}

PathState axpy(const PathState& p, double h, const PathState& d) {
  return {p.k + h * d.k, p.kp + h * d.kp, p.theta + h * d.theta, p.x + h * d.x,
          p.y + h * d.y};
}

}  // namespace

std::vector<PathState> integrate_path(const PathState& start, double length,
                                      int intervals, double max_substep) {
  if (intervals < 1 || !(length > 0.0)) {
    throw DomainError("integrate_path: need a positive length and interval count");
  }
  const double h = length / intervals;
  const int sub = std::max(1, static_cast<int>(std::ceil(h / max_substep)));
  const double dt = h / sub;
  std::vector<PathState> out;
  out.reserve(intervals + 1);
  PathState p = start;
  out.push_back(p);
  for (int i = 0; i < intervals; ++i) {
    for (int j = 0; j < sub; ++j) {
      const PathState d1 = derivative(p);
      const PathState d2 = derivative(axpy(p, 0.5 * dt, d1));
      const PathState d3 = derivative(axpy(p, 0.5 * dt, d2));
      const PathState d4 = derivative(axpy(p, dt, d3));
      p = {p.k + dt / 6 * (d1.k + 2 * d2.k + 2 * d3.k + d4.k),
           p.kp + dt / 6 * (d1.kp + 2 * d2.kp + 2 * d3.kp + d4.kp),
           p.theta + dt / 6 * (d1.theta + 2 * d2.theta + 2 * d3.theta + d4.theta),
           p.x + dt / 6 * (d1.x + 2 * d2.x + 2 * d3.x + d4.x),
           p.y + dt / 6 * (d1.y + 2 * d2.y + 2 * d3.y + d4.y)};
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace elab::elastica
