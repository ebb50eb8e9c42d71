#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "cpcurve/quadrature.hpp"
#include "cpcurve/special_functions.hpp"

using namespace cpcurve;

// Reference values computed with 30-digit arithmetic (mpmath e1).
TEST_CASE("e1 matches high-precision reference values") {
  CHECK(e1(0.5) == doctest::Approx(0.55977359477616081175).epsilon(1e-14));
  CHECK(e1(1.0) == doctest::Approx(0.21938393439552027368).epsilon(1e-14));
  CHECK(e1(10.0) == doctest::Approx(4.1569689296853242774e-6).epsilon(1e-14));
  CHECK(ei(2.0) == doctest::Approx(-0.048900510708061119567).epsilon(1e-14));
}

TEST_CASE("e1 agrees with direct quadrature of its defining integral") {
  // e1(x) = int_x^inf e^-t / t dt; the tail beyond x + 60 is below 1e-26
  // relative and invisible at these tolerances.
  for (double x : {0.3, 0.5, 1.0, 2.0, 5.0}) {
    const auto ref = integrate(
        [](double t) { return std::exp(-t) / t; }, x, x + 60.0, 1e-13, 1e-13);
    CHECK(e1(x) == doctest::Approx(ref.value).epsilon(1e-12));
  }
}

TEST_CASE("e1 series and continued fraction agree at the switchover") {
  // The implementation switches representation at x = 1; both sides must
  // give the same function.
  const double below = e1(1.0 - 1e-9);
  const double above = e1(1.0 + 1e-9);
  CHECK(below == doctest::Approx(above).epsilon(1e-8));
  CHECK(below > above);  // e1 is strictly decreasing
}

TEST_CASE("e1 domain handling") {
  CHECK_THROWS_AS(e1(0.0), std::domain_error);
  CHECK_THROWS_AS(e1(-1.0), std::domain_error);
  // Underflow clamp: beyond x = 700 the result cannot be represented as a
  // normal double times e^-x and is defined as 0.
  CHECK(e1(700.0) == 0.0);
  CHECK(e1(1e6) == 0.0);
  CHECK(e1(699.0) > 0.0);
  CHECK(e1(699.0) == doctest::Approx(3.8287763e-307).epsilon(1e-6));
}

TEST_CASE("ei is the negative of e1") {
  for (double x : {0.1, 1.0, 3.0, 20.0}) {
    CHECK(ei(x) == -e1(x));
  }
}

TEST_CASE("quadrature reproduces elementary integrals") {
  const auto exp_int = integrate(
      [](double x) { return std::exp(-2.0 * x); }, 0.0, 60.0, 1e-12, 1e-12);
  CHECK(exp_int.value == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(exp_int.error <= 1e-11);
  CHECK(exp_int.evaluations >= 15);

  // Polynomials up to degree 22 are exact for the 15-point Kronrod rule;
  // a single panel must suffice.
  const auto poly = integrate([](double x) { return x * x * x * x * x; }, 0.0,
                              1.0, 1e-12, 1e-12);
  CHECK(poly.value == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(poly.evaluations <= 45);
}

TEST_CASE("quadrature handles the logarithmic endpoint of ei") {
  // xi^2 ei(2 xi) appears in the coefficient integrals; ei(2 xi) diverges
  // logarithmically at 0 but the product is integrable and smooth enough
  // for the adaptive rule. Exact value: -2! / (3 * 2^3) = -1/12.
  const auto r = integrate([](double x) { return x * x * ei(2.0 * x); }, 0.0,
                           60.0, 1e-12, 1e-12);
  CHECK(r.value == doctest::Approx(-1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("quadrature rejects bad intervals and reports non-convergence") {
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 1.0, 1.0, 1e-10, 1e-10),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 2.0, 1.0, 1e-10, 1e-10),
                  std::invalid_argument);
  // An unattainable tolerance must fail loudly instead of looping.
  CHECK_THROWS_AS(integrate([](double x) { return std::exp(-2.0 * x); }, 0.0,
                            60.0, 1e-30, 1e-30),
                  std::runtime_error);
}
