// The 22 dimensionless response coefficients beta^(p)_P|q(xi) entering the
// curvature expansion of the particle-surface interaction, stored as exact
// rational polynomial tables, plus their analytic integrals over [0, inf).

#pragma once

#include <array>
#include <cstdint>

namespace cpcurve {

enum class Polarization : std::uint8_t { E, M };

// Identifies one coefficient: polarization P, derivative order p of the
// height profile, branch q. Valid combinations per polarization:
//   p = 0: q in {1, 2}   (flat-surface terms)
//   p = 2: q in {1, 2, 3} (first order in the curvatures)
//   p = 3: q = 0          (third-derivative term, singleton)
//   p = 4: q in {1..5}    (second order in the curvatures)
struct BetaIndex {
  Polarization pol;
  int p;
  int q;
};

bool beta_index_valid(const BetaIndex& idx) noexcept;

inline constexpr int beta_slot_count = 22;

// Canonical enumeration: E block then M block, each ordered
// (0,1),(0,2),(2,1),(2,2),(2,3),(3,0),(4,1),...,(4,5).
const std::array<BetaIndex, beta_slot_count>& beta_indices() noexcept;

// Position of idx in the canonical enumeration; throws std::invalid_argument
// for invalid (p, q) combinations.
int beta_slot(const BetaIndex& idx);

// Exact rational, reduced, den > 0.
struct Rational {
  long long num;
  long long den;
  double value() const noexcept {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

// One coefficient function
//   beta(xi) = exp_poly(xi) * exp(-2 xi) + ei_poly(xi) * ei(2 xi)
// with both polynomials in ascending powers. ei_poly has no constant or
// linear term, so beta(0) = exp_poly[0] exactly (ei diverges only
// logarithmically at 0).
struct BetaCoefficient {
  std::array<Rational, 6> exp_poly;
  std::array<Rational, 7> ei_poly;
};

const BetaCoefficient& beta_coefficient(const BetaIndex& idx);

// Evaluates one coefficient at xi >= 0 (throws std::domain_error below 0).
double beta(const BetaIndex& idx, double xi);

// Exact rational value at xi = 0 (= exp_poly constant term).
Rational beta_at_zero(const BetaIndex& idx);

// All 22 coefficients at one xi in canonical slot order; shares a single
// exp(-2 xi) / ei(2 xi) evaluation across the table.
std::array<double, beta_slot_count> beta_all(double xi);

// int_0^inf beta(xi) dxi from the exact moments
//   int_0^inf xi^n exp(-2 xi) dxi = n! / 2^(n+1)
//   int_0^inf xi^n ei(2 xi) dxi  = -n! / ((n+1) 2^(n+1)),
// cached after the first computation (thread-safe).
double beta_integral(const BetaIndex& idx);
const std::array<double, beta_slot_count>& beta_integrals();

}  // namespace cpcurve
