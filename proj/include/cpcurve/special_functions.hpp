// Exponential integral E1 and the sign convention used by the response
// coefficient tables.

#pragma once

namespace cpcurve {

// E1(x) = int_x^inf dt exp(-t)/t for x > 0.
//
// Power series below x = 1, modified Lentz continued fraction above;
// relative error below 1e-12 over [1e-8, 700). Returns exactly 0 for
// x >= 700, where the exp(-x) scale is far below anything the coefficient
// evaluation can resolve. Throws std::domain_error for x <= 0.
double e1(double x);

// ei(x) = -int_x^inf dt exp(-t)/t = -e1(x).
//
// This is the convention the coefficient tables attach to their second
// polynomial column (Ei continued from negative arguments), NOT the
// principal-value exponential integral: ei(x) < 0 for all x > 0.
// Clamps to 0 for x >= 700 like e1.
double ei(double x);

}  // namespace cpcurve
