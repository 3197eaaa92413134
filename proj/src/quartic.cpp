#include "elab/quartic.hpp"

#include <algorithm>
#include <sstream>

#include "elab/error.hpp"

namespace elab::quartic {

namespace {

double derivative(double x) { return -x * x * x + 2.0; }

// Safeguarded Newton on [lo, hi] with P(lo), P(hi) of opposite sign.
double refine(double C, double lo, double hi) {
  double f_lo = evaluate(C, lo);
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = evaluate(C, x);
    if (f == 0.0) {
      return x;
    }
    if ((f < 0.0) == (f_lo < 0.0)) {
      lo = x;
      f_lo = f;
    } else {
      hi = x;
    }
    const double d = derivative(x);
    double next = (d != 0.0) ? x - f / d : lo;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x)) ||
        hi - lo <= 4e-16 * std::max(1.0, std::abs(x))) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

}  // namespace

QuarticRoots roots(double C, double eps) {
  if (!(C >= kCMin + eps)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "quartic::roots: C = " << C << " is below the admissible range C >= C_min + "
        << eps << " with C_min = -3/4 * 2^(1/3) = " << kCMin
        << " (otherwise P_C is negative everywhere)";
    throw DomainError(msg.str());
  }
  const double peak = kCubeRootTwo;
  const double hi = 2.0 + std::max(C, 0.0) + 2.0;
  const double lo = -std::max(C, 1.0) - 2.0;

  QuarticRoots r{};
  r.C = C;
  r.k_M = refine(C, peak, hi);
  r.k_m = refine(C, lo, peak);

  // Two synthetic divisions of X^4 - 8X - 8C by (X - k_M) then (X - k_m).
  const double a = r.k_M;
  const double b = r.k_m;
  r.quad_a = 1.0;
  r.quad_b = a + b;
  r.quad_c = a * a + a * b + b * b;
  r.S = a + b;
  r.P = a * b;
  return r;
}

RootSensitivities root_sensitivities(double C, double eps) {
  const QuarticRoots r = roots(C, eps);
  return {2.0 / (r.k_m * r.k_m * r.k_m - 2.0), 2.0 / (r.k_M * r.k_M * r.k_M - 2.0)};
}

}  // namespace elab::quartic
