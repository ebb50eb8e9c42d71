// The curvature-expanded particle-surface potential: finite-temperature
// Matsubara summation, zero-temperature quadrature, and the decomposition
// into orientation-independent angular coefficients.

#pragma once

#include <string>
#include <vector>

#include "cpcurve/particle.hpp"

namespace cpcurve {

// Local surface geometry at the point nearest the particle. Curvature sign
// convention: R_j > 0 when the surface curves away from the particle,
// R_j < 0 towards it (particle inside a cavity); inv_r = 0 is a flat
// direction. g1, g2 are the dimensionless third-derivative inputs
// d^2 d_i laplacian(H); they vanish for the symmetric profiles the
// stability analysis assumes.
struct SurfacePatch {
  double d;       // separation [m], > 0
  double inv_r1;  // 1/R1 [1/m], signed
  double inv_r2;  // 1/R2 [1/m], signed
  double g1 = 0.0;
  double g2 = 0.0;

  double u1() const noexcept { return d * inv_r1; }  // expansion parameter d/R1
  double u2() const noexcept { return d * inv_r2; }
};

struct ThermalState {
  double temperature;  // [K], >= 0; exactly 0 selects the quadrature path
};

struct Tolerances {
  double matsubara_rel_tol = 1e-12;  // term-size cutoff for the frequency sum
  double quad_tol = 1e-10;           // abs+rel tolerance of the T=0 quadrature
  double validity_threshold = 0.5;   // warn when |d/R_j| exceeds this
};

// Dimensionless decomposition of the potential,
//   U = -pref * (A + B cos 2 th + C (u1 - u2) cos 2 ph sin^2 th
//                + Gc sin 2 th (g1 cos ph + g2 sin ph)),
// with pref = kB T V / d^3 at T > 0 and pref = hbar c V / d^4 at T = 0.
// A, B, C, Gc do not depend on the orientation; the Gc term is active only
// when the patch carries third-derivative data.
struct PotentialBreakdown {
  double A, B, C, Gc;
  double u1, u2;     // d/R1, d/R2 of the evaluated patch
  double g1, g2;
  double u_reduced;  // value at the requested orientation
  double u_si;       // same in joules
  std::vector<std::string> warnings;

  double D() const noexcept { return C * (u1 - u2); }
  double reduced_at(const Orientation& o) const;
};

// Dimensionless thermal wave number xi_n = 2 pi n kB T d / (hbar c).
// Throws std::domain_error for T <= 0 or d <= 0.
double matsubara_xi(int n, const ThermalState& t, double d);

// Orientation-basis channel values at one xi, already divided by the
// particle volume: bracket = a + b cos 2 th + c (u1-u2) cos 2 ph sin^2 th
//                          + g sin 2 th (g1 cos ph + g2 sin ph).
struct ChannelValues {
  double a, b, c, g;
};

ChannelValues summand_channels(const Particle& p, const SurfacePatch& s,
                               double xi);

// The full dimensionless bracket at one xi for a given orientation; the
// polarizabilities are evaluated at omega = c xi / d.
double summand(const Particle& p, const SurfacePatch& s, const Orientation& o,
               double xi);

// Full evaluation. T > 0: primed Matsubara sum (n = 0 at half weight),
// truncated once a term falls below matsubara_rel_tol of the running sum,
// with a hard cutoff at xi_n > 60. T = 0: adaptive quadrature of the
// channels over xi in [0, 60]; for frequency-independent polarizabilities
// (perfect conductor) the integral short-circuits to the exact coefficient
// moments. Throws std::domain_error for invalid patches (d <= 0 or
// |d/R_j| >= 1); appends warnings above the validity threshold.
PotentialBreakdown potential(const Particle& p, const SurfacePatch& s,
                             const Orientation& o, const ThermalState& t,
                             const Tolerances& tol = {});

// Independent closed form for a perfect conductor at T = 0 (requires
// g1 = g2 = 0), in joules. Kept verbatim as an oracle for the
// moment-assembled pipeline.
double pc_closed_form_t0(double n3, double volume, const SurfacePatch& s,
                         const Orientation& o);

// Unit bookkeeping: reduced value -> joules, pref as described above.
double si_energy(double reduced, double volume, double d,
                 const ThermalState& t);

}  // namespace cpcurve
