#include "cpcurve/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cpcurve {

namespace {

constexpr double euler_gamma = 0.577215664901532860606512090082;

// Convergent series around 0:
//   E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!).
// Used below x = 1 where it needs at most ~25 terms and loses no digits.
double e1_series(double x) {
  double sum = 0.0;
  double term = 1.0;  // (-x)^k / k! at k = 0
  for (int k = 1; k <= 60; ++k) {
    term *= -x / k;
    const double contrib = term / k;
    sum += contrib;
    if (std::fabs(contrib) < 1e-17 * std::fabs(sum)) break;
  }
  return -euler_gamma - std::log(x) - sum;
}

// Continued fraction in the modified Lentz scheme:
//   E1(x) = exp(-x) / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...)))).
// Used from x = 1 upward; converges in a few dozen iterations there.
double e1_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 200; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = b + a * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h * std::exp(-x);
}

}  // namespace

double e1(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("e1: argument must be positive, got " +
                            std::to_string(x));
  }
  if (x >= 700.0) return 0.0;  // exp(-x) scale is negligible for all callers
  return x < 1.0 ? e1_series(x) : e1_continued_fraction(x);
}

double ei(double x) { return -e1(x); }

}  // namespace cpcurve
