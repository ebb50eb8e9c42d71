// Adaptive Gauss-Kronrod quadrature for smooth, exponentially decaying
// integrands on finite intervals.

#pragma once

#include <functional>

namespace cpcurve {

struct QuadratureResult {
  double value;
  double error;      // accumulated absolute error estimate
  int evaluations;   // integrand calls
};

// Integrates f over [a, b] with a 7-point Gauss / 15-point Kronrod pair,
// bisecting intervals until each local error estimate fits within its
// length-proportional share of max(abs_tol, rel_tol * |I|) or is dominated
// by the rounding floor of the panel (splitting cannot improve it then).
//
// Throws std::runtime_error, with the achieved error in the message, if the
// accumulated error still exceeds the requested tolerance; tolerances near
// or below 50 eps of the integral of |f| are unattainable by construction.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 1e-12,
                           double rel_tol = 1e-12, int max_depth = 48);

}  // namespace cpcurve
