// Spheroid geometry, material models, principal polarizabilities at
// imaginary frequency, and their rotation into the surface frame.

#pragma once

#include <array>
#include <string>

namespace cpcurve {

using Mat3 = std::array<std::array<double, 3>, 3>;

// A spheroid with semi-axes (R, R, L/2) is fully described, as far as its
// dipolar response goes, by the depolarizing factor n3 along the symmetry
// axis and the volume. n1 = n2 = (1 - n3)/2; n3 < 1/3 means prolate
// ("needle"), n3 > 1/3 oblate ("pancake"), 1/3 the sphere.
struct SpheroidGeometry {
  double n3;      // dimensionless, in (0, 1)
  double volume;  // [m^3]
};

// Closed-form depolarizing factor along the symmetry axis for semi-axes
// (R, R, L/2). Prolate and oblate branches in elementary functions; a series
// fallback covers the near-sphere region |e^2| < 1e-4 where the closed forms
// lose digits to cancellation. Throws std::domain_error for nonpositive
// dimensions.
double depolarizing_n3(double R, double L);

SpheroidGeometry spheroid_from_axes(double R, double L);
SpheroidGeometry spheroid_from_n3(double n3, double volume);

struct TwoOscillator {
  double c_uv, c_ir;  // oscillator strengths (dimensionless)
  double w_uv, w_ir;  // oscillator frequencies [rad/s]
};

// Either an idealized perfect conductor (eps -> inf, mu = 0; frequency
// independent) or a two-oscillator dielectric model on the imaginary
// frequency axis.
struct MaterialModel {
  enum class Kind { PerfectConductor, TwoOscillatorDielectric };
  Kind kind;
  TwoOscillator osc{};  // used by the dielectric kind only

  static MaterialModel perfect_conductor();
  static MaterialModel dielectric(const TwoOscillator& osc);
};

// Presets addressable by name from the CLI/config:
//   "gold-PC"    perfect conductor
//   "SiO2-hough" two-oscillator silica (C_UV=1.098, C_IR=1.703,
//                w_UV=2.033e16 rad/s, w_IR=1.88e14 rad/s)
// Throws std::invalid_argument for unknown names.
MaterialModel material_preset(const std::string& name);

// eps(i omega) >= 1 for a dielectric model; monotonically decreasing in
// omega, eps(0) = 1 + C_UV + C_IR. Throws std::invalid_argument when called
// on a perfect conductor (use the dedicated closed forms instead).
double permittivity(const MaterialModel& m, double omega);

// Principal-axis polarizabilities in the Gaussian convention (units m^3);
// perp = a11 + a22 = 2 a11, a33 along the symmetry axis.
struct PrincipalPolarizabilities {
  double e_perp, e_33;  // electric
  double m_perp, m_33;  // magnetic (0 for dielectrics)

  double sigma_e() const noexcept { return 2.0 * e_33 - e_perp; }
  double sigma_m() const noexcept { return 2.0 * m_33 - m_perp; }
};

// Dielectric: a^E_mumu = V/(4 pi) (eps-1)/(1+(eps-1) n_mu), a^M = 0.
// Perfect conductor: a^E_mumu = V/(4 pi n_mu), a^M_mumu = -V/(4 pi (1-n_mu)).
PrincipalPolarizabilities principal_polarizabilities(const SpheroidGeometry& g,
                                                     const MaterialModel& m,
                                                     double omega);

struct Particle {
  SpheroidGeometry geometry;
  MaterialModel material;
};

// Direction of the symmetry axis in the surface frame,
// n = (sin th cos ph, sin th sin ph, cos th).
struct Orientation {
  double theta;  // [rad]
  double phi;    // [rad]
};

// Full symmetric 3x3 tensor in the surface frame for one polarization,
// built from its principal values (perp, a33).
Mat3 rotate_tensor(double alpha_perp, double alpha_33, const Orientation& o);

// The tensor combinations the potential actually consumes:
//   perp        = a_xx + a_yy = 1/4 (3 perp~ + 2 a33~ - sigma cos 2 theta)
//   zz          = 1/4 (perp~ + 2 a33~ + sigma cos 2 theta)
//   xx_minus_yy = (sigma/2) cos 2 phi sin^2 theta
//   zx, zy      = cross components (third-derivative term only)
struct AngularCombos {
  double perp, zz, xx_minus_yy, zx, zy;
};

AngularCombos angular_combos(double alpha_perp, double alpha_33,
                             const Orientation& o);

}  // namespace cpcurve
