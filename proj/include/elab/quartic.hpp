#pragma once

#include <cmath>

// First-integral polynomial of the penalized elastica,
//   P_C(X) = -X^4/4 + 2X + 2C,
// whose two real roots bound the curvature of every orbit with constant C.

namespace elab::quartic {

inline const double kCubeRootTwo = std::cbrt(2.0);
/// Smallest admissible C: P_C has a double root at 2^(1/3).
inline const double kCMin = -0.75 * std::cbrt(2.0);
inline constexpr double kDegenerateEps = 1e-10;

struct QuarticRoots {
  double C;
  double k_m;  ///< smaller real root (minimum curvature)
  double k_M;  ///< larger real root (maximum curvature)
  // Monic quadratic cofactor q(X) = quad_a X^2 + quad_b X + quad_c with
  // P_C(X) = 1/4 (k_M - X)(X - k_m) q(X).
  double quad_a;
  double quad_b;
  double quad_c;
  double S;  ///< k_m + k_M
  double P;  ///< k_m * k_M

  double q(double x) const { return (quad_a * x + quad_b) * x + quad_c; }
};

/// Horner evaluation of P_C(x).
inline double evaluate(double C, double x) {
  return ((-0.25 * x * x * x) + 2.0) * x + 2.0 * C;
}

/// Both real roots of P_C. Throws DomainError for C < C_min + eps.
QuarticRoots roots(double C, double eps = kDegenerateEps);

struct RootSensitivities {
  double dk_m_dC;
  double dk_M_dC;
};

/// dk/dC = 2 / (k^3 - 2) at each root.
RootSensitivities root_sensitivities(double C, double eps = kDegenerateEps);

}  // namespace elab::quartic
