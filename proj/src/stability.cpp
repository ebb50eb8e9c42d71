#include "cpcurve/stability.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cpcurve/constants.hpp"

namespace cpcurve {

char axis_label(StableAxis a) noexcept {
  switch (a) {
    case StableAxis::X: return 'x';
    case StableAxis::Y: return 'y';
    default: return 'z';
  }
}

Classified classify(double B, double D) noexcept {
  const double upper = std::max(0.0, 2.0 * B);
  const double lower = std::min(0.0, -2.0 * B);
  if (D > upper) return {StableAxis::X, false};
  if (D < lower) return {StableAxis::Y, false};
  // Z is the fallback; exact boundary ties are physical degeneracies and
  // worth surfacing.
  return {StableAxis::Z, D == upper || D == lower};
}

StabilityResult stable_orientation(const Particle& p, const SurfacePatch& s,
                                   const ThermalState& t,
                                   const Tolerances& tol) {
  if (s.g1 != 0.0 || s.g2 != 0.0) {
    throw std::domain_error(
        "stable_orientation: classification assumes a symmetric profile "
        "(g1 = g2 = 0)");
  }
  PotentialBreakdown bd = potential(p, s, Orientation{0.0, 0.0}, t, tol);
  const Classified cls = classify(bd.B, bd.D());
  return {cls, std::move(bd)};
}

std::string scan_axis_name(ScanAxis a) {
  switch (a) {
    case ScanAxis::DOverR1: return "d_over_R1";
    case ScanAxis::R1OverR2: return "R1_over_R2";
    case ScanAxis::Distance: return "d";
    case ScanAxis::Temperature: return "T";
  }
  return "?";
}

ScanAxis scan_axis_from_name(const std::string& name) {
  if (name == "d_over_R1") return ScanAxis::DOverR1;
  if (name == "R1_over_R2") return ScanAxis::R1OverR2;
  if (name == "d") return ScanAxis::Distance;
  if (name == "T") return ScanAxis::Temperature;
  throw std::invalid_argument(
      "unknown scan axis '" + name +
      "' (known: d_over_R1, R1_over_R2, d, T)");
}

double AxisSpec::value(int i) const {
  if (count <= 1) return min;
  return min + i * (max - min) / (count - 1);
}

// Resolves one grid point into engine inputs. The d/R1 axis carries the sign
// of R1 (negative = particle inside the curved surface); |R1| comes from the
// fixed parameters and sets the separation d = |d/R1| * |R1|.
CellInputs cell_inputs(const GridSpec& spec, double v1, double v2) {
  double u1_axis = std::numeric_limits<double>::quiet_NaN();
  double ratio = spec.fixed.r1_over_r2;
  double d_um = spec.fixed.d_um;
  double temperature = spec.fixed.temperature;

  const auto apply = [&](ScanAxis kind, double v) {
    switch (kind) {
      case ScanAxis::DOverR1: u1_axis = v; break;
      case ScanAxis::R1OverR2: ratio = v; break;
      case ScanAxis::Distance: d_um = v; break;
      case ScanAxis::Temperature: temperature = v; break;
    }
  };
  apply(spec.axis1.kind, v1);
  apply(spec.axis2.kind, v2);

  using constants::micron;
  double d, inv_r1;
  if (!std::isnan(u1_axis)) {
    if (u1_axis == 0.0) {
      throw std::domain_error("d/R1 = 0 leaves the separation undefined");
    }
    if (spec.fixed.r1_um == 0.0) {
      throw std::domain_error("the d/R1 axis needs a nonzero fixed R1 scale");
    }
    const double r1 =
        std::copysign(std::fabs(spec.fixed.r1_um), u1_axis) * micron;
    d = std::fabs(u1_axis) * std::fabs(r1);
    inv_r1 = 1.0 / r1;
  } else {
    if (!(d_um > 0.0)) {
      throw std::domain_error("separation d must be positive");
    }
    d = d_um * micron;
    inv_r1 = spec.fixed.r1_um == 0.0 ? 0.0 : 1.0 / (spec.fixed.r1_um * micron);
  }
  const double inv_r2 = ratio * inv_r1;
  if (temperature < 0.0) {
    throw std::domain_error("temperature must be nonnegative");
  }
  return {SurfacePatch{d, inv_r1, inv_r2, 0.0, 0.0},
          ThermalState{temperature}};
}

namespace {

void fill_cell(GridCell& cell, const GridSpec& spec, const Particle& p,
               const Tolerances& tol, int i1, int i2) {
  cell.axis1 = spec.axis1.value(i1);
  cell.axis2 = spec.axis2.value(i2);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    const CellInputs in = cell_inputs(spec, cell.axis1, cell.axis2);
    const StabilityResult r =
        stable_orientation(p, in.patch, in.thermal, tol);
    cell.cls = r.cls;
    cell.A = r.breakdown.A;
    cell.B = r.breakdown.B;
    cell.C = r.breakdown.C;
    cell.D = r.breakdown.D();
    cell.error.clear();
  } catch (const std::exception& e) {
    cell.cls = {StableAxis::Z, false};
    cell.A = cell.B = cell.C = cell.D = nan;
    cell.error = e.what();
  }
}

StabilityGrid prepare(const GridSpec& spec, const Particle& p) {
  if (spec.axis1.count < 1 || spec.axis2.count < 1) {
    throw std::invalid_argument("scan: axis counts must be >= 1");
  }
  if (spec.axis1.kind == spec.axis2.kind) {
    throw std::invalid_argument("scan: the two axes must differ");
  }
  StabilityGrid grid{spec, p, {}};
  grid.cells.resize(static_cast<std::size_t>(spec.axis1.count) *
                    spec.axis2.count);
  return grid;
}

}  // namespace

const GridCell& StabilityGrid::at(int i1, int i2) const {
  return cells[static_cast<std::size_t>(i2) * spec.axis1.count + i1];
}

std::array<double, 3> StabilityGrid::fractions() const {
  std::array<double, 3> counts{0.0, 0.0, 0.0};
  int ok = 0;
  for (const GridCell& cell : cells) {
    if (!cell.ok()) continue;
    ++ok;
    counts[static_cast<int>(cell.cls.axis)] += 1.0;
  }
  if (ok > 0) {
    for (double& c : counts) c /= ok;
  }
  return counts;
}

int StabilityGrid::error_count() const {
  int n = 0;
  for (const GridCell& cell : cells) {
    if (!cell.ok()) ++n;
  }
  return n;
}

StabilityGrid scan_serial(const GridSpec& spec, const Particle& p,
                          const Tolerances& tol) {
  StabilityGrid grid = prepare(spec, p);
  for (int i2 = 0; i2 < spec.axis2.count; ++i2) {
    for (int i1 = 0; i1 < spec.axis1.count; ++i1) {
      fill_cell(grid.cells[static_cast<std::size_t>(i2) * spec.axis1.count + i1],
                spec, p, tol, i1, i2);
    }
  }
  return grid;
}

StabilityGrid scan(const GridSpec& spec, const Particle& p,
                   const Tolerances& tol) {
  StabilityGrid grid = prepare(spec, p);
  const int n1 = spec.axis1.count, n2 = spec.axis2.count;
  // Cells are independent and land in preallocated slots, so the result is
  // identical to the serial loop regardless of scheduling.
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static)
#endif
  for (int i2 = 0; i2 < n2; ++i2) {
    for (int i1 = 0; i1 < n1; ++i1) {
      fill_cell(grid.cells[static_cast<std::size_t>(i2) * n1 + i1], spec, p,
                tol, i1, i2);
    }
  }
  return grid;
}

}  // namespace cpcurve
