#include "elab/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "elab/error.hpp"

namespace elab::minimize {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// (d - sin d) / d^2: twice the arc-chord area of a unit-length arc turning by d.
double segment_shape(double d) {
  if (std::abs(d) < 1e-2) {
    const double d2 = d * d;
    return d * (1.0 / 6.0 - d2 / 120.0 + d2 * d2 / 5040.0);
  }
  return (d - std::sin(d)) / (d * d);
}

double segment_shape_slope(double d) {
  if (std::abs(d) < 1e-2) {
    const double d2 = d * d;
    return 1.0 / 6.0 - d2 / 40.0 + d2 * d2 / 1008.0;
  }
  return (1.0 - std::cos(d)) / (d * d) - 2.0 * (d - std::sin(d)) / (d * d * d);
}

// Chord-to-arc ratio sin(d/2) / (d/2) and its derivative in d.
double chord_ratio(double d) {
  const double x = 0.5 * d;
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double chord_ratio_slope(double d) {
  const double x = 0.5 * d;
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return 0.5 * (-x / 3.0 + x * x2 / 30.0);
  }
  return (x * std::cos(x) - std::sin(x)) / (2.0 * x * x);
}

struct Geometry {
  std::vector<curve::Point> nodes;  // N + 1 positions, nodes[0] = origin
  double E = 0.0;
  double shoelace = 0.0;
  double segments = 0.0;
};

Geometry trace(const OptimState& s) {
  const std::size_t n = s.nodes();
  const double h = s.L / static_cast<double>(n);
  Geometry g;
  g.nodes.resize(n + 1);
  curve::Point p{};
  g.nodes[0] = p;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = s.thetas[i + 1] - s.thetas[i];
    const double m = 0.5 * (s.thetas[i + 1] + s.thetas[i]);
    const double len = h * chord_ratio(d);
    const curve::Point v{len * std::cos(m), len * std::sin(m)};
    g.shoelace += 0.5 * (p.x * v.y - p.y * v.x);
    p = {p.x + v.x, p.y + v.y};
    g.nodes[i + 1] = p;
    g.segments += 0.5 * h * h * segment_shape(d);
    g.E += d * d / (2.0 * h);
  }
  return g;
}

void check(const OptimState& s) {
  if (s.thetas.size() < 3 || !(s.L > 0.0)) {
    throw ContractViolation("minimize: state needs at least two nodes and L > 0");
  }
}

}  // namespace

double Evaluation::violation() const { return std::hypot(closure_x, closure_y); }

Evaluation evaluate(const OptimState& s) {
  check(s);
  const Geometry g = trace(s);
  Evaluation e;
  e.E = g.E;
  e.A = g.shoelace + g.segments;
  e.closure_x = g.nodes.back().x;
  e.closure_y = g.nodes.back().y;
  e.value = e.E + e.A + s.multipliers[0] * e.closure_x + s.multipliers[1] * e.closure_y +
            0.5 * s.penalty * (e.closure_x * e.closure_x + e.closure_y * e.closure_y);
  return e;
}

double objective(const OptimState& state) { return evaluate(state).value; }

double Gradient::norm() const {
  double sum = L * L;
  for (double g : thetas) {
    sum += g * g;
  }
  return std::sqrt(sum);
}

Gradient gradient(const OptimState& s) {
  check(s);
  const std::size_t n = s.nodes();
  const double h = s.L / static_cast<double>(n);
  const Geometry g = trace(s);
  const curve::Point c = g.nodes.back();
  const double wx0 = s.multipliers[0] + s.penalty * c.x;
  const double wy0 = s.multipliers[1] + s.penalty * c.y;

  Gradient grad;
  grad.thetas.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double d = s.thetas[k + 1] - s.thetas[k];
    const double m = 0.5 * (s.thetas[k + 1] + s.thetas[k]);
    const double cm = std::cos(m);
    const double sm = std::sin(m);
    // Adjoint of the chord vector: shoelace term plus the closure terms.
    const double sx = g.nodes[k].x + g.nodes[k + 1].x - c.x;
    const double sy = g.nodes[k].y + g.nodes[k + 1].y - c.y;
    const double wx = -0.5 * sy + wx0;
    const double wy = 0.5 * sx + wy0;
    const double by_mid = h * chord_ratio(d) * (-wx * sm + wy * cm);
    const double by_turn = h * chord_ratio_slope(d) * (wx * cm + wy * sm) +
                           0.5 * h * h * segment_shape_slope(d) + d / h;
    grad.thetas[k] += 0.5 * by_mid - by_turn;
    grad.thetas[(k + 1) % n] += 0.5 * by_mid + by_turn;
  }
  const double A = g.shoelace + g.segments;
  grad.L = (2.0 * A - g.E + s.multipliers[0] * c.x + s.multipliers[1] * c.y +
            s.penalty * (c.x * c.x + c.y * c.y)) /
           s.L;
  return grad;
}

namespace {

OptimState step_from(const OptimState& s, const Gradient& g, double alpha) {
  OptimState out = s;
  const std::size_t n = s.nodes();
  for (std::size_t i = 0; i < n; ++i) {
    out.thetas[i] -= alpha * g.thetas[i];
  }
  out.thetas[n] = out.thetas[0] + kTwoPi;
  out.L -= alpha * g.L;
  return out;
}

double dot(const Gradient& a, const Gradient& b) {
  double sum = a.L * b.L;
  for (std::size_t i = 0; i < a.thetas.size(); ++i) {
    sum += a.thetas[i] * b.thetas[i];
  }
  return sum;
}

}  // namespace

OptimResult minimize_energy(const OptimState& init, int max_iter, const Options& opts) {
  check(init);
  OptimState x = init;
  x.thetas.back() = x.thetas.front() + kTwoPi;
  x.penalty = opts.penalty_start;
  x.multipliers = {0.0, 0.0, 0.0};
  if (evaluate(x).violation() >= 1.0) {
    throw ContractViolation("minimize_energy: initial closure violation is too large");
  }

  OptimResult result;
  int iter = 0;
  int outer = 0;
  Gradient g = gradient(x);
  Evaluation ev = evaluate(x);
  while (iter < max_iter) {
    // Inner loop: descent on the current augmented Lagrangian.
    double alpha = 1e-3;
    Gradient g_prev;
    OptimState x_prev;
    bool have_prev = false;
    while (iter < max_iter && g.norm() > opts.gradient_tol) {
      if (have_prev) {
        Gradient dg = g;
        dg.L -= g_prev.L;
        double ss = (x.L - x_prev.L) * (x.L - x_prev.L);
        double sy = (x.L - x_prev.L) * dg.L;
        for (std::size_t i = 0; i < dg.thetas.size(); ++i) {
          const double si = x.thetas[i] - x_prev.thetas[i];
          dg.thetas[i] -= g_prev.thetas[i];
          ss += si * si;
          sy += si * dg.thetas[i];
        }
        alpha = sy > 0.0 ? std::clamp(ss / sy, 1e-10, 1e4) : 1e-3;
      }
      const double gg = dot(g, g);
      OptimState trial = step_from(x, g, alpha);
      Evaluation trial_ev = evaluate(trial);
      while (trial_ev.value > ev.value - 1e-4 * alpha * gg && alpha > 1e-18) {
        alpha *= 0.5;
        trial = step_from(x, g, alpha);
        trial_ev = evaluate(trial);
      }
      if (!(trial_ev.value < ev.value)) {
        break;  // no further decrease representable
      }
      x_prev = std::move(x);
      g_prev = std::move(g);
      have_prev = true;
      x = std::move(trial);
      ev = trial_ev;
      g = gradient(x);
      ++iter;
      result.log.push_back({iter, outer, ev.value, ev.E, ev.A, ev.violation(), alpha});
    }
    const bool small_gradient = g.norm() <= opts.gradient_tol;
    if (small_gradient && ev.violation() <= opts.violation_tol) {
      result.converged = true;
      break;
    }
    if (iter >= max_iter) {
      break;
    }
    // First-order multiplier update, then tighten the penalty.
    x.multipliers[0] += x.penalty * ev.closure_x;
    x.multipliers[1] += x.penalty * ev.closure_y;
    x.penalty = std::min(x.penalty * opts.penalty_factor, opts.penalty_cap);
    ++outer;
    ev = evaluate(x);
    g = gradient(x);
    if (outer > 200) {
      break;
    }
  }

  result.state = x;
  result.iterations = iter;
  result.gradient_norm = g.norm();
  result.violation = ev.violation();
  result.metrics = metrics_of(x);
  result.stationarity_residual = stationarity_residual(profile_of(x));
  const curve::CurvatureProfile prof = profile_of(x);
  const std::size_t n = x.nodes();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean += prof.k[i];
  }
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    var += (prof.k[i] - mean) * (prof.k[i] - mean);
  }
  result.curvature_stddev = std::sqrt(var / static_cast<double>(n));
  return result;
}

double stationarity_residual(const curve::CurvatureProfile& profile) {
  const std::size_t n = profile.intervals();
  const double h = profile.spacing();
  double worst = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double k = profile.k[i];
    const double kpp = (profile.k[i + 1] - 2.0 * k + profile.k[i - 1]) / (h * h);
    worst = std::max(worst, std::abs(kpp + 0.5 * k * k * k - 1.0));
  }
  return worst;
}

curve::CurvatureProfile profile_of(const OptimState& s) {
  const std::size_t n = s.nodes();
  const double h = s.L / static_cast<double>(n);
  curve::CurvatureProfile p;
  p.L = s.L;
  p.theta0 = s.thetas[0];
  p.k.resize(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    p.k[i] = (s.thetas[i + 1] - s.thetas[i]) / h;
  }
  p.k[n] = p.k[0];
  return p;
}

curve::PlanarCurve curve_of(const OptimState& s) {
  const std::size_t n = s.nodes();
  const Geometry g = trace(s);
  const curve::CurvatureProfile prof = profile_of(s);
  curve::PlanarCurve c;
  c.points = g.nodes;
  c.thetas = s.thetas;
  c.length = s.L;
  c.curvatures.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double before = prof.k[(i + n - 1) % n];
    const double after = prof.k[i % n];
    c.curvatures[i] = 0.5 * (before + after);
  }
  c.closed = c.position_gap() <= curve::kClosureTolerance * c.length &&
             c.angle_gap() <= curve::kClosureTolerance;
  return c;
}

curve::ShapeMetrics metrics_of(const OptimState& s) {
  const Evaluation e = evaluate(s);
  curve::ShapeMetrics m;
  m.E = e.E;
  m.A = e.A;
  m.Lperim = s.L;
  m.EEA = m.E * m.E * m.A;
  m.gage_ratio = m.E * m.A / m.Lperim;
  curve::PlanarCurve c = curve_of(s);
  c.closed = true;
  m.circumradius = curve::max_distance(c, curve::centroid(c));
  return m;
}

OptimState circle_state(int nodes, double radius) {
  OptimState s;
  s.thetas.resize(nodes + 1);
  for (int i = 0; i <= nodes; ++i) {
    s.thetas[i] = kTwoPi * i / nodes;
  }
  s.L = kTwoPi * radius;
  return s;
}

OptimState state_from_curve(const curve::PlanarCurve& c, int nodes) {
  OptimState s;
  s.L = c.length;
  s.thetas.resize(nodes + 1);
  const double ratio = static_cast<double>(c.intervals()) / nodes;
  for (int j = 0; j <= nodes; ++j) {
    const double u = j * ratio;
    const auto i = std::min(static_cast<std::size_t>(u), c.intervals() - 1);
    const double t = u - static_cast<double>(i);
    s.thetas[j] = (1.0 - t) * c.thetas[i] + t * c.thetas[i + 1];
  }
  s.thetas[nodes] = s.thetas[0] + kTwoPi;
  return s;
}

}  // namespace elab::minimize
