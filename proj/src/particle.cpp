#include "cpcurve/particle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cpcurve {

namespace {

constexpr double pi = std::numbers::pi;

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) {
    throw std::domain_error(std::string(what) + " must be positive, got " +
                            std::to_string(v));
  }
}

}  // namespace

double depolarizing_n3(double R, double L) {
  require_positive(R, "semi-axis R");
  require_positive(L, "length L");
  // Signed squared eccentricity: positive for prolate (L > 2R), negative for
  // oblate. The closed forms cancel badly near the sphere, so a short series
  // (error O(e^8)) takes over there.
  const double e2 = 1.0 - 4.0 * R * R / (L * L);
  if (std::fabs(e2) < 1e-4) {
    return 1.0 / 3.0 - e2 * (2.0 / 15.0 + e2 * (2.0 / 35.0 + e2 * (2.0 / 63.0)));
  }
  if (e2 > 0.0) {
    const double e = std::sqrt(e2);
    return (1.0 - e2) / (2.0 * e2 * e) * (std::log((1.0 + e) / (1.0 - e)) - 2.0 * e);
  }
  // Oblate branch: continue the prolate formula to imaginary eccentricity,
  // ebar = sqrt(4R^2/L^2 - 1), which turns the logarithm into an arctangent.
  const double ebar = std::sqrt(-e2);
  return (1.0 - e2) / (-e2 * ebar) * (ebar - std::atan(ebar));
}

SpheroidGeometry spheroid_from_axes(double R, double L) {
  const double n3 = depolarizing_n3(R, L);
  const double volume = 4.0 / 3.0 * pi * R * R * (L / 2.0);
  return {n3, volume};
}

SpheroidGeometry spheroid_from_n3(double n3, double volume) {
  if (!(n3 > 0.0 && n3 < 1.0)) {
    throw std::domain_error("depolarizing factor n3 must lie in (0,1), got " +
                            std::to_string(n3));
  }
  require_positive(volume, "volume");
  return {n3, volume};
}

MaterialModel MaterialModel::perfect_conductor() {
  return {Kind::PerfectConductor, {}};
}

MaterialModel MaterialModel::dielectric(const TwoOscillator& osc) {
  if (!(osc.c_uv > 0.0 && osc.c_ir > 0.0 && osc.w_uv > 0.0 && osc.w_ir > 0.0)) {
    throw std::domain_error(
        "two-oscillator model needs positive strengths and frequencies");
  }
  return {Kind::TwoOscillatorDielectric, osc};
}

MaterialModel material_preset(const std::string& name) {
  if (name == "gold-PC") return MaterialModel::perfect_conductor();
  if (name == "SiO2-hough") {
    return MaterialModel::dielectric({1.098, 1.703, 2.033e16, 1.88e14});
  }
  throw std::invalid_argument("unknown material preset '" + name +
                              "' (known: gold-PC, SiO2-hough)");
}

double permittivity(const MaterialModel& m, double omega) {
  if (m.kind == MaterialModel::Kind::PerfectConductor) {
    throw std::invalid_argument(
        "permittivity: not defined for the perfect conductor; use the "
        "dedicated polarizability closed forms");
  }
  if (omega < 0.0) {
    throw std::domain_error("permittivity: omega must be nonnegative");
  }
  const TwoOscillator& o = m.osc;
  return 1.0 + o.c_uv * o.w_uv * o.w_uv / (omega * omega + o.w_uv * o.w_uv) +
         o.c_ir * o.w_ir * o.w_ir / (omega * omega + o.w_ir * o.w_ir);
}

PrincipalPolarizabilities principal_polarizabilities(const SpheroidGeometry& g,
                                                     const MaterialModel& m,
                                                     double omega) {
  const double n3 = g.n3;
  const double n1 = (1.0 - n3) / 2.0;
  const double v4pi = g.volume / (4.0 * pi);
  if (m.kind == MaterialModel::Kind::PerfectConductor) {
    // eps -> inf for the electric response, mu = 0 for the magnetic one;
    // both frequency independent.
    return {2.0 * v4pi / n1, v4pi / n3,
            -2.0 * v4pi / (1.0 - n1), -v4pi / (1.0 - n3)};
  }
  const double chi = permittivity(m, omega) - 1.0;
  return {2.0 * v4pi * chi / (1.0 + chi * n1), v4pi * chi / (1.0 + chi * n3),
          0.0, 0.0};
}

Mat3 rotate_tensor(double alpha_perp, double alpha_33, const Orientation& o) {
  // Axially symmetric tensor: alpha = a11 * 1 + (a33 - a11) n n^T with the
  // symmetry axis n = (sin th cos ph, sin th sin ph, cos th), a11 = perp/2.
  const double a11 = alpha_perp / 2.0;
  const double gap = alpha_33 - a11;
  const double st = std::sin(o.theta), ct = std::cos(o.theta);
  const double cp = std::cos(o.phi), sp = std::sin(o.phi);
  const double n[3] = {st * cp, st * sp, ct};
  Mat3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out[i][j] = gap * n[i] * n[j] + (i == j ? a11 : 0.0);
    }
  }
  return out;
}

AngularCombos angular_combos(double alpha_perp, double alpha_33,
                             const Orientation& o) {
  const double sigma = 2.0 * alpha_33 - alpha_perp;
  const double c2t = std::cos(2.0 * o.theta);
  const double s2t = std::sin(2.0 * o.theta);
  const double st = std::sin(o.theta);
  return {
      0.25 * (3.0 * alpha_perp + 2.0 * alpha_33 - sigma * c2t),
      0.25 * (alpha_perp + 2.0 * alpha_33 + sigma * c2t),
      (sigma / 2.0) * std::cos(2.0 * o.phi) * st * st,
      (sigma / 4.0) * s2t * std::cos(o.phi),
      (sigma / 4.0) * s2t * std::sin(o.phi),
  };
}

}  // namespace cpcurve
