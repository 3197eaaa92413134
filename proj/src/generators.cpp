#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "elab/curve.hpp"
#include "elab/error.hpp"
#include "elab/quadrature.hpp"

namespace elab::curve {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_pi(double a) { return a - kTwoPi * std::round(a / kTwoPi); }

// Smooth closed curve t -> c(t), t in [0, 2 pi], described by its first two
// derivatives. Positions come from c itself, so closure is exact.
struct Parametric {
  std::function<Point(double)> position;
  std::function<Point(double)> d1;
  std::function<Point(double)> d2;
};

// Resamples a parametric loop to `intervals` uniform arc-length steps.
PlanarCurve resample(const Parametric& c, int intervals) {
  const auto speed = [&](double t) {
    const Point v = c.d1(t);
    return std::hypot(v.x, v.y);
  };
  const auto& gl = quadrature::gauss_legendre(8);
  const int panels = 4 * intervals;
  const double dt = kTwoPi / panels;
  std::vector<double> cum(panels + 1, 0.0);
  for (int i = 0; i < panels; ++i) {
    cum[i + 1] = cum[i] + gl.integrate(speed, i * dt, (i + 1) * dt);
  }
  const double length = cum.back();

  PlanarCurve curve;
  curve.length = length;
  curve.closed = true;
  curve.corner_turning = 0.0;
  curve.points.resize(intervals + 1);
  curve.thetas.resize(intervals + 1);
  curve.curvatures.resize(intervals + 1);

  int panel = 0;
  for (int j = 0; j <= intervals; ++j) {
    double t;
    if (j == 0) {
      t = 0.0;
    } else if (j == intervals) {
      t = kTwoPi;
    } else {
      const double target = length * j / intervals;
      while (panel + 1 < panels && cum[panel + 1] < target) {
        ++panel;
      }
      const double t0 = panel * dt;
      t = t0 + dt * (target - cum[panel]) / (cum[panel + 1] - cum[panel]);
      for (int iter = 0; iter < 8; ++iter) {
        const double f = cum[panel] + gl.integrate(speed, t0, t) - target;
        const double step = f / speed(t);
        t -= step;
        if (std::abs(step) < 1e-15) {
          break;
        }
      }
    }
    const Point p = c.position(t);
    const Point v = c.d1(t);
    const Point a = c.d2(t);
    const double sp = std::hypot(v.x, v.y);
    const double raw = std::atan2(v.y, v.x);
    double theta = raw;
    if (j > 0) {
      theta = curve.thetas[j - 1] + wrap_pi(raw - curve.thetas[j - 1]);
    }
    curve.points[j] = p;
    curve.thetas[j] = theta;
    curve.curvatures[j] = (v.x * a.y - v.y * a.x) / (sp * sp * sp);
  }
  curve.points.back() = curve.points.front();
  return curve;
}

}  // namespace

PlanarCurve circle(double radius, int intervals, Point center) {
  Parametric c{
      [=](double t) {
        return Point{center.x + radius * std::cos(t), center.y + radius * std::sin(t)};
      },
      [=](double t) { return Point{-radius * std::sin(t), radius * std::cos(t)}; },
      [=](double t) { return Point{-radius * std::cos(t), -radius * std::sin(t)}; }};
  return resample(c, intervals);
}

PlanarCurve ellipse(double a, double b, int intervals) {
  Parametric c{[=](double t) { return Point{a * std::cos(t), b * std::sin(t)}; },
               [=](double t) { return Point{-a * std::sin(t), b * std::cos(t)}; },
               [=](double t) { return Point{-a * std::cos(t), -b * std::sin(t)}; }};
  return resample(c, intervals);
}

PlanarCurve fourier_shape(std::uint64_t seed, int modes, double amplitude,
                          int intervals) {
  if (modes < 2) {
    throw DomainError("fourier_shape: modes must be at least 2");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<double> ca(modes + 1, 0.0);
  std::vector<double> cb(modes + 1, 0.0);
  for (int n = 2; n <= modes; ++n) {
    ca[n] = amplitude * coeff(rng);
    cb[n] = amplitude * coeff(rng);
  }
  // r and its first two derivatives in phi.
  const auto radial = [ca, cb, modes](double phi, int order) {
    double r = order == 0 ? 1.0 : 0.0;
    for (int n = 2; n <= modes; ++n) {
      const double c = std::cos(n * phi);
      const double s = std::sin(n * phi);
      switch (order) {
        case 0: r += ca[n] * c + cb[n] * s; break;
        case 1: r += n * (-ca[n] * s + cb[n] * c); break;
        default: r += -n * n * (ca[n] * c + cb[n] * s); break;
      }
    }
    return r;
  };
  constexpr int kScan = 8192;
  for (int i = 0; i < kScan; ++i) {
    const double phi = kTwoPi * i / kScan;
    if (radial(phi, 0) < 0.1) {
      std::ostringstream msg;
      msg << "fourier_shape: radius " << radial(phi, 0) << " < 0.1 at angle " << phi
          << " (seed " << seed << ", modes " << modes << ", amplitude " << amplitude
          << ")";
      throw RejectionError(msg.str());
    }
  }
  Parametric c{
      [radial](double t) {
        const double r = radial(t, 0);
        return Point{r * std::cos(t), r * std::sin(t)};
      },
      [radial](double t) {
        const double r = radial(t, 0);
        const double dr = radial(t, 1);
        return Point{dr * std::cos(t) - r * std::sin(t), dr * std::sin(t) + r * std::cos(t)};
      },
      [radial](double t) {
        const double r = radial(t, 0);
        const double dr = radial(t, 1);
        const double ddr = radial(t, 2);
        return Point{ddr * std::cos(t) - 2.0 * dr * std::sin(t) - r * std::cos(t),
                     ddr * std::sin(t) + 2.0 * dr * std::cos(t) - r * std::sin(t)};
      }};
  return resample(c, intervals);
}

namespace {

struct Piece {
  double length;
  double k;
};

struct Pose {
  double x;
  double y;
  double theta;
};

Pose advance(const Pose& p, double k, double t) {
  if (std::abs(k) < 1e-300) {
    return {p.x + t * std::cos(p.theta), p.y + t * std::sin(p.theta), p.theta};
  }
  const double th = p.theta + k * t;
  return {p.x + (std::sin(th) - std::sin(p.theta)) / k,
          p.y - (std::cos(th) - std::cos(p.theta)) / k, th};
}

PlanarCurve sample_pieces(const std::vector<Piece>& pieces, Pose start, int intervals) {
  double length = 0.0;
  for (const Piece& p : pieces) {
    length += p.length;
  }
  PlanarCurve curve;
  curve.length = length;
  curve.closed = true;
  curve.points.resize(intervals + 1);
  curve.thetas.resize(intervals + 1);
  curve.curvatures.resize(intervals + 1);

  std::size_t idx = 0;
  double piece_start = 0.0;
  Pose pose = start;
  for (int j = 0; j <= intervals; ++j) {
    const double s = length * j / intervals;
    while (idx + 1 < pieces.size() && s >= piece_start + pieces[idx].length) {
      pose = advance(pose, pieces[idx].k, pieces[idx].length);
      piece_start += pieces[idx].length;
      ++idx;
    }
    const Pose here = advance(pose, pieces[idx].k, s - piece_start);
    curve.points[j] = {here.x, here.y};
    curve.thetas[j] = here.theta;
    curve.curvatures[j] = pieces[idx].k;
  }
  return curve;
}

}  // namespace

PlanarCurve dumbbell(double neck_length, int intervals) {
  if (!(neck_length >= 1.0)) {
    throw DomainError("dumbbell: neck_length must be at least 1");
  }
  const double rho = kDumbbellFilletRadius;
  const double w = 1.0 / (neck_length * neck_length);
  // Fillet tangent to the neck line y = -w and externally tangent to a unit
  // lobe centred on the x axis.
  const double beta = std::acos(std::min(1.0, (w + rho) / (1.0 + rho)));
  const double lobe = kPi + 2.0 * beta;
  std::vector<Piece> pieces;
  for (int side = 0; side < 2; ++side) {
    pieces.push_back({neck_length, 0.0});
    if (beta > 0.0) {
      pieces.push_back({rho * beta, -1.0 / rho});
    }
    pieces.push_back({lobe, 1.0});
    if (beta > 0.0) {
      pieces.push_back({rho * beta, -1.0 / rho});
    }
  }
  double length = 0.0;
  for (const Piece& p : pieces) {
    length += p.length;
  }
  if (intervals <= 0) {
    intervals = std::max(kGeneratorIntervals, static_cast<int>(std::ceil(length / 1e-3)));
    intervals += intervals % 2;
  }
  PlanarCurve curve = sample_pieces(pieces, {-0.5 * neck_length, -w, 0.0}, intervals);
  curve.points.back() = curve.points.front();
  return curve;
}

EnergyArea ring_metrics(double R) {
  if (!(R > 0.0)) {
    throw DomainError("ring_metrics: R must be positive");
  }
  return {kPi / R + kPi * R / (R * R + 1.0), 2.0 * kPi + kPi / (R * R)};
}

EnergyArea gaussian_metrics(double alpha) {
  if (!(alpha > 0.0)) {
    throw DomainError("gaussian_metrics: alpha must be positive");
  }
  // In u = sqrt(alpha) x the tail e^{-u^2} drops below 1e-12 at X; the
  // polynomial factor is covered by integrating to X + 4.
  const double X = std::sqrt(12.0 * std::log(10.0));
  const auto integrand = [alpha](double u) {
    const double e = std::exp(-u * u);
    const double p = u * u - 1.0;
    return p * p * e / std::pow(1.0 + alpha * u * u * e, 2.5);
  };
  const double half = quadrature::adaptive(integrand, 0.0, X + 4.0, 1e-14);
  const double E = 0.5 * std::pow(alpha, 1.5) * 2.0 * half;
  return {E, std::sqrt(kTwoPi / alpha)};
}

}  // namespace elab::curve
