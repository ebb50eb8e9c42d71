// Stable-orientation classification and stability-diagram scans over
// curvature/separation/temperature grids.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "cpcurve/potential.hpp"

namespace cpcurve {

enum class StableAxis { X, Y, Z };

char axis_label(StableAxis a) noexcept;  // 'x', 'y', 'z'

struct Classified {
  StableAxis axis;
  bool marginal;  // true when a boundary tie was resolved by the Z rule
};

// Minimum of A + B cos 2 th + D cos 2 ph sin^2 th over orientations lies on
// a coordinate axis: X if D > max(0, 2B), Y if D < min(0, -2B), Z otherwise
// (strict inequalities; ties fall to Z and are flagged marginal).
Classified classify(double B, double D) noexcept;

struct StabilityResult {
  Classified cls;
  PotentialBreakdown breakdown;
};

// Computes the angular coefficients, forms D = C (u1 - u2), classifies.
// Requires g1 = g2 = 0 (the classification assumes a symmetric profile).
StabilityResult stable_orientation(const Particle& p, const SurfacePatch& s,
                                   const ThermalState& t,
                                   const Tolerances& tol = {});

enum class ScanAxis { DOverR1, R1OverR2, Distance, Temperature };

std::string scan_axis_name(ScanAxis a);
ScanAxis scan_axis_from_name(const std::string& name);  // throws std::invalid_argument

struct AxisSpec {
  ScanAxis kind;
  double min, max;
  int count;  // >= 1; count == 1 pins the axis at min

  double value(int i) const;  // i-th grid point, endpoints inclusive
};

// Parameters not covered by the two axes. Lengths in microns here; this is
// the user-facing grid description.
struct ScanFixed {
  double r1_um = 20.0;        // R1; |r1_um| sets the length scale of the
                              // d/R1 axis (its sign then comes from the axis
                              // value); signed radius otherwise; 0 = flat
  double r1_over_r2 = 1.0;    // fixed ratio R1/R2
  double d_um = 1.0;          // fixed separation when no axis provides it
  double temperature = 300.0; // fixed T when no axis provides it [K]
};

struct GridSpec {
  AxisSpec axis1;
  AxisSpec axis2;
  ScanFixed fixed;
};

struct CellInputs {
  SurfacePatch patch;
  ThermalState thermal;
};

// Resolves one grid point into engine inputs (separation, curvatures,
// temperature). Throws std::domain_error for unusable points (d/R1 = 0,
// missing R1 scale, negative temperature). Public so a 1x1 scan can fall
// back to the full single-point report for its only cell.
CellInputs cell_inputs(const GridSpec& spec, double axis1_value,
                       double axis2_value);

struct GridCell {
  double axis1, axis2;  // grid point
  Classified cls;
  double A, B, C, D;
  std::string error;  // empty on success; failed cells keep NaN values

  bool ok() const noexcept { return error.empty(); }
};

struct StabilityGrid {
  GridSpec spec;
  Particle particle;
  std::vector<GridCell> cells;  // row-major, axis2 outer, axis1 inner

  const GridCell& at(int i1, int i2) const;
  std::array<double, 3> fractions() const;  // x/y/z share of the ok cells
  int error_count() const;
};

// Fills the grid cell by cell; cells are independent and any failure is
// recorded in the cell, never aborts the scan. scan() runs the cells in
// parallel (OpenMP when available; thread count via OMP_NUM_THREADS) with
// deterministic output ordering; scan_serial() is the plain loop kept as
// the reference implementation and produces identical results.
StabilityGrid scan(const GridSpec& spec, const Particle& p,
                   const Tolerances& tol = {});
StabilityGrid scan_serial(const GridSpec& spec, const Particle& p,
                          const Tolerances& tol = {});

}  // namespace cpcurve
