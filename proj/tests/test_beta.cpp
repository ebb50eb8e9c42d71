#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "cpcurve/beta.hpp"
#include "cpcurve/quadrature.hpp"
#include "cpcurve/special_functions.hpp"

using namespace cpcurve;

namespace {

// Exact values at xi = 0 in canonical slot order (E block then M block,
// (0,1),(0,2),(2,1),(2,2),(2,3),(3,0),(4,1)..(4,5) within each block).
constexpr Rational kAtZero[beta_slot_count] = {
    {1, 8},   {1, 4},  {-3, 32}, {-1, 16}, {-3, 32}, {1, 32},
    {1, 128}, {-1, 64}, {5, 64},  {3, 32},  {3, 32},
    {-1, 8},  {-1, 4}, {5, 32},  {3, 16},  {1, 32},  {5, 32},
    {-11, 64}, {-5, 64}, {-7, 64}, {-1, 32}, {-1, 32}};

// Exact integrals over [0, inf) in the same order, from the moment formulas
// int xi^n e^-2xi = n!/2^(n+1) and int xi^n ei(2 xi) = -n!/((n+1) 2^(n+1)).
constexpr Rational kIntegrals[beta_slot_count] = {
    {1, 4},   {1, 4},   {-3, 20},  {-2, 15}, {-1, 10},  {1, 15},
    {3, 140}, {-1, 120}, {13, 140}, {3, 20},  {9, 140},
    {-1, 4},  {-1, 4},  {11, 60},  {1, 5},   {-1, 10},  {1, 15},
    {-1, 15}, {-23, 280}, {-3, 20}, {-9, 140}, {1, 12}};

}  // namespace

TEST_CASE("index enumeration and slot lookup are consistent") {
  const auto& indices = beta_indices();
  for (int s = 0; s < beta_slot_count; ++s) {
    CHECK(beta_index_valid(indices[s]));
    CHECK(beta_slot(indices[s]) == s);
  }
  CHECK_FALSE(beta_index_valid({Polarization::E, 1, 1}));
  CHECK_FALSE(beta_index_valid({Polarization::E, 0, 3}));
  CHECK_FALSE(beta_index_valid({Polarization::M, 2, 4}));
  CHECK_FALSE(beta_index_valid({Polarization::M, 3, 1}));
  CHECK_FALSE(beta_index_valid({Polarization::E, 4, 6}));
  CHECK_FALSE(beta_index_valid({Polarization::E, 4, 0}));
  CHECK_THROWS_AS(beta_slot({Polarization::E, 1, 1}), std::invalid_argument);
}

TEST_CASE("values at xi = 0 are the exact table rationals") {
  const auto& indices = beta_indices();
  for (int s = 0; s < beta_slot_count; ++s) {
    const Rational exact = beta_at_zero(indices[s]);
    CHECK(exact.num == kAtZero[s].num);
    CHECK(exact.den == kAtZero[s].den);
    // the floating evaluation hits the rational exactly at xi = 0
    CHECK(beta(indices[s], 0.0) == exact.value());
  }
}

TEST_CASE("spot values from the coefficient tables") {
  // beta(0)E|1(1) = (7/8) e^-2: the ei part of this entry vanishes at xi = 1.
  CHECK(beta({Polarization::E, 0, 1}, 1.0) ==
        doctest::Approx(0.11841837283203611).epsilon(1e-15));
  CHECK(beta({Polarization::M, 0, 1}, 0.0) == -0.125);
  CHECK(beta({Polarization::E, 0, 2}, 0.0) == 0.25);
  CHECK(beta({Polarization::M, 0, 2}, 0.0) == -0.25);
  CHECK(beta({Polarization::E, 2, 2}, 0.0) == -0.0625);
}

TEST_CASE("beta_all matches per-index evaluation") {
  const auto& indices = beta_indices();
  for (double xi : {0.0, 0.05, 0.5, 1.0, 2.7, 10.0}) {
    const auto all = beta_all(xi);
    for (int s = 0; s < beta_slot_count; ++s) {
      CHECK(all[s] == doctest::Approx(beta(indices[s], xi)).epsilon(1e-15));
    }
  }
}

TEST_CASE("negative xi is rejected, large xi decays to zero") {
  CHECK_THROWS_AS(beta({Polarization::E, 0, 1}, -0.1), std::domain_error);
  for (const BetaIndex& idx : beta_indices()) {
    CHECK(std::fabs(beta(idx, 100.0)) < 1e-75);
  }
}

TEST_CASE("analytic integrals match the exact moment rationals") {
  const auto& indices = beta_indices();
  for (int s = 0; s < beta_slot_count; ++s) {
    CHECK(beta_integral(indices[s]) ==
          doctest::Approx(kIntegrals[s].value()).epsilon(1e-15));
    CHECK(beta_integrals()[s] == beta_integral(indices[s]));
  }
}

TEST_CASE("the two flat-surface integrals are equal") {
  // int beta(0)P|1 = int beta(0)P|2 for both polarizations; this equality is
  // what removes the orientation dependence of the flat-surface potential
  // for frequency-independent response.
  CHECK(std::fabs(beta_integral({Polarization::E, 0, 1}) - 0.25) < 1e-15);
  CHECK(std::fabs(beta_integral({Polarization::E, 0, 2}) - 0.25) < 1e-15);
  CHECK(std::fabs(beta_integral({Polarization::M, 0, 1}) + 0.25) < 1e-15);
  CHECK(std::fabs(beta_integral({Polarization::M, 0, 2}) + 0.25) < 1e-15);
}

TEST_CASE("analytic integrals agree with adaptive quadrature") {
  // Representative entries from every (p, q) family; the acceptance suite
  // covers all 22.
  for (const BetaIndex idx :
       {BetaIndex{Polarization::E, 0, 1}, BetaIndex{Polarization::E, 2, 3},
        BetaIndex{Polarization::E, 3, 0}, BetaIndex{Polarization::E, 4, 5},
        BetaIndex{Polarization::M, 0, 2}, BetaIndex{Polarization::M, 4, 1}}) {
    const auto r = integrate([&](double xi) { return beta(idx, xi); }, 0.0,
                             60.0, 1e-12, 1e-12);
    CHECK(beta_integral(idx) == doctest::Approx(r.value).epsilon(1e-11));
  }
}
