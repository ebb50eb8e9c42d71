#include "cpcurve/potential.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "cpcurve/beta.hpp"
#include "cpcurve/constants.hpp"
#include "cpcurve/quadrature.hpp"

namespace cpcurve {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double xi_cutoff = 60.0;  // exp(-2*60) is far below double precision

std::vector<std::string> check_patch(const SurfacePatch& s, double threshold) {
  if (!(s.d > 0.0)) {
    throw std::domain_error("separation d must be positive, got " +
                            std::to_string(s.d));
  }
  const double u1 = s.u1(), u2 = s.u2();
  if (std::fabs(u1) >= 1.0 || std::fabs(u2) >= 1.0) {
    std::ostringstream msg;
    msg << "curvature expansion requires |d/R| < 1, got d/R1 = " << u1
        << ", d/R2 = " << u2;
    throw std::domain_error(msg.str());
  }
  std::vector<std::string> warnings;
  for (const auto& [u, name] : {std::pair{u1, "d/R1"}, std::pair{u2, "d/R2"}}) {
    if (std::fabs(u) > threshold) {
      std::ostringstream msg;
      msg << name << " = " << u << " exceeds the validity threshold "
          << threshold << "; the expansion is dubious here";
      warnings.push_back(msg.str());
    }
  }
  return warnings;
}

// Builds the four orientation-basis channels from the 22 coefficient values
// (canonical slot order) and the principal polarizabilities; the result is
// divided by the volume so channels are dimensionless.
ChannelValues assemble_channels(const std::array<double, beta_slot_count>& bb,
                                const PrincipalPolarizabilities& pol,
                                double volume, double u1, double u2) {
  const double s = u1 + u2;
  const double q2 = u1 * u1 + u2 * u2;
  const double comps[2][2] = {{pol.e_perp, pol.e_33}, {pol.m_perp, pol.m_33}};
  ChannelValues ch{0.0, 0.0, 0.0, 0.0};
  for (int blk = 0; blk < 2; ++blk) {
    const double perp = comps[blk][0], a33 = comps[blk][1];
    if (perp == 0.0 && a33 == 0.0) continue;
    const double sigma = 2.0 * a33 - perp;
    const double abar = 0.25 * (3.0 * perp + 2.0 * a33);
    const double zbar = 0.25 * (perp + 2.0 * a33);
    // slots within a polarization block: 0,1 flat; 2,3,4 first curvature
    // order; 5 third-derivative; 6..10 second curvature order
    const double* b = bb.data() + 11 * blk;
    ch.a += b[0] * abar + b[1] * zbar + s * (b[2] * abar + b[3] * zbar) +
            s * s * (b[6] * abar + b[7] * zbar) +
            q2 * (b[8] * abar + b[9] * zbar);
    ch.b += 0.25 * sigma *
            (-b[0] + b[1] + s * (-b[2] + b[3]) + s * s * (-b[6] + b[7]) +
             q2 * (-b[8] + b[9]));
    ch.c += 0.25 * sigma * (b[4] + b[10] * s);
    ch.g += 0.25 * sigma * b[5];
  }
  ch.a /= volume;
  ch.b /= volume;
  ch.c /= volume;
  ch.g /= volume;
  return ch;
}

double l1(const ChannelValues& ch) {
  return std::fabs(ch.a) + std::fabs(ch.b) + std::fabs(ch.c) + std::fabs(ch.g);
}

}  // namespace

double PotentialBreakdown::reduced_at(const Orientation& o) const {
  const double c2t = std::cos(2.0 * o.theta);
  const double s2t = std::sin(2.0 * o.theta);
  const double st = std::sin(o.theta);
  return -(A + B * c2t + C * (u1 - u2) * std::cos(2.0 * o.phi) * st * st +
           Gc * s2t * (g1 * std::cos(o.phi) + g2 * std::sin(o.phi)));
}

double matsubara_xi(int n, const ThermalState& t, double d) {
  if (n < 0) throw std::invalid_argument("matsubara_xi: n must be >= 0");
  if (!(t.temperature > 0.0)) {
    throw std::domain_error("matsubara_xi: defined for T > 0 only");
  }
  if (!(d > 0.0)) throw std::domain_error("matsubara_xi: d must be positive");
  using namespace constants;
  return 2.0 * pi * n * k_boltzmann * t.temperature * d / (hbar * c_light);
}

ChannelValues summand_channels(const Particle& p, const SurfacePatch& s,
                               double xi) {
  if (xi < 0.0) throw std::domain_error("summand: xi must be nonnegative");
  const double omega = constants::c_light * xi / s.d;
  const auto pol = principal_polarizabilities(p.geometry, p.material, omega);
  return assemble_channels(beta_all(xi), pol, p.geometry.volume, s.u1(),
                           s.u2());
}

double summand(const Particle& p, const SurfacePatch& s, const Orientation& o,
               double xi) {
  const ChannelValues ch = summand_channels(p, s, xi);
  const double c2t = std::cos(2.0 * o.theta);
  const double s2t = std::sin(2.0 * o.theta);
  const double st = std::sin(o.theta);
  return ch.a + ch.b * c2t +
         ch.c * (s.u1() - s.u2()) * std::cos(2.0 * o.phi) * st * st +
         ch.g * s2t * (s.g1 * std::cos(o.phi) + s.g2 * std::sin(o.phi));
}

PotentialBreakdown potential(const Particle& p, const SurfacePatch& s,
                             const Orientation& o, const ThermalState& t,
                             const Tolerances& tol) {
  if (t.temperature < 0.0) {
    throw std::domain_error("temperature must be nonnegative");
  }
  PotentialBreakdown out{};
  out.warnings = check_patch(s, tol.validity_threshold);
  out.u1 = s.u1();
  out.u2 = s.u2();
  out.g1 = s.g1;
  out.g2 = s.g2;

  const double volume = p.geometry.volume;
  if (t.temperature == 0.0) {
    if (p.material.kind == MaterialModel::Kind::PerfectConductor) {
      // Frequency-independent response: the xi integral reduces exactly to
      // the coefficient moments, no quadrature error.
      const auto pol = principal_polarizabilities(p.geometry, p.material, 0.0);
      std::array<double, beta_slot_count> moments{};
      const auto& integrals = beta_integrals();
      for (int i = 0; i < beta_slot_count; ++i) moments[i] = integrals[i];
      const ChannelValues ch =
          assemble_channels(moments, pol, volume, out.u1, out.u2);
      out.A = ch.a / (2.0 * pi);
      out.B = ch.b / (2.0 * pi);
      out.C = ch.c / (2.0 * pi);
      out.Gc = ch.g / (2.0 * pi);
    } else {
      // Dispersive material: integrate each channel over xi in [0, 60]; the
      // integrands are smooth and decay like exp(-2 xi).
      double vals[4];
      for (int k = 0; k < 4; ++k) {
        const auto component = [&](double xi) {
          const ChannelValues ch = summand_channels(p, s, xi);
          return k == 0 ? ch.a : k == 1 ? ch.b : k == 2 ? ch.c : ch.g;
        };
        vals[k] = integrate(component, 0.0, xi_cutoff, tol.quad_tol,
                            tol.quad_tol)
                      .value;
      }
      out.A = vals[0] / (2.0 * pi);
      out.B = vals[1] / (2.0 * pi);
      out.C = vals[2] / (2.0 * pi);
      out.Gc = vals[3] / (2.0 * pi);
    }
  } else {
    // Primed Matsubara sum: n = 0 at half weight, then terms until either
    // the hard xi cutoff or the relative-size test fires.
    const double xi1 = matsubara_xi(1, t, s.d);
    ChannelValues acc = summand_channels(p, s, 0.0);
    acc.a *= 0.5;
    acc.b *= 0.5;
    acc.c *= 0.5;
    acc.g *= 0.5;
    for (int n = 1; n * xi1 <= xi_cutoff; ++n) {
      const ChannelValues term = summand_channels(p, s, n * xi1);
      acc.a += term.a;
      acc.b += term.b;
      acc.c += term.c;
      acc.g += term.g;
      if (l1(term) <= tol.matsubara_rel_tol * l1(acc)) break;
    }
    out.A = acc.a;
    out.B = acc.b;
    out.C = acc.c;
    out.Gc = acc.g;
  }

  out.u_reduced = out.reduced_at(o);
  out.u_si = si_energy(out.u_reduced, volume, s.d, t);
  return out;
}

double pc_closed_form_t0(double n3, double volume, const SurfacePatch& s,
                         const Orientation& o) {
  if (s.g1 != 0.0 || s.g2 != 0.0) {
    throw std::invalid_argument(
        "pc_closed_form_t0: third-derivative terms are not part of the "
        "closed form");
  }
  if (!(n3 > 0.0 && n3 < 1.0)) {
    throw std::domain_error("pc_closed_form_t0: n3 must lie in (0,1)");
  }
  if (!(s.d > 0.0)) throw std::domain_error("pc_closed_form_t0: d <= 0");
  using namespace constants;
  const double u1 = s.u1(), u2 = s.u2();
  const double sum = u1 + u2;
  const double q2 = u1 * u1 + u2 * u2;
  const double m = u1 * u2;
  const double c2t = std::cos(2.0 * o.theta);
  const double st = std::sin(o.theta);
  const double angular =
      ((1.0 + 2.0 * n3) * sum + (23.0 + 82.0 * n3) / 14.0 * q2 -
       (25.0 + 38.0 * n3) / 7.0 * m) *
          c2t +
      (u2 - u1) *
          (6.0 * (1.0 + 2.0 * n3) - (27.0 + 62.0 * n3) / 7.0 * sum) *
          std::cos(2.0 * o.phi) * st * st;
  const double body = (1.0 + 9.0 * n3) -
                      (17.0 + 183.0 * n3 - 14.0 * n3 * n3) / 30.0 * sum +
                      (215.0 + 2457.0 * n3 - 434.0 * n3 * n3) / 420.0 * q2 +
                      (11.0 + 693.0 * n3 - 266.0 * n3 * n3) / 210.0 * m +
                      (1.0 - 3.0 * n3) / 30.0 * angular;
  const double pref = hbar * c_light * volume /
                      (32.0 * pi * pi * n3 * (1.0 - n3 * n3) * std::pow(s.d, 4));
  return -pref * body;
}

double si_energy(double reduced, double volume, double d,
                 const ThermalState& t) {
  if (!(d > 0.0)) throw std::domain_error("si_energy: d must be positive");
  if (!(volume > 0.0)) throw std::domain_error("si_energy: volume must be positive");
  if (t.temperature < 0.0) {
    throw std::domain_error("si_energy: temperature must be nonnegative");
  }
  using namespace constants;
  if (t.temperature == 0.0) {
    return reduced * hbar * c_light * volume / std::pow(d, 4);
  }
  return reduced * k_boltzmann * t.temperature * volume / std::pow(d, 3);
}

}  // namespace cpcurve
