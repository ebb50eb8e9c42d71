#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "cpcurve/stability.hpp"

using namespace cpcurve;

namespace {

Particle pc_particle(double n3) {
  return {spheroid_from_n3(n3, 8e-24), MaterialModel::perfect_conductor()};
}

GridSpec pc_grid(AxisSpec a1, AxisSpec a2, ScanFixed fixed = {}) {
  return {a1, a2, fixed};
}

bool same_cells(const StabilityGrid& a, const StabilityGrid& b) {
  if (a.cells.size() != b.cells.size()) return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    const GridCell& x = a.cells[i];
    const GridCell& y = b.cells[i];
    const bool values_match =
        (x.ok() && y.ok())
            ? (x.A == y.A && x.B == y.B && x.C == y.C && x.D == y.D)
            : (!x.ok() && !y.ok());
    if (!values_match || x.axis1 != y.axis1 || x.axis2 != y.axis2 ||
        x.cls.axis != y.cls.axis || x.cls.marginal != y.cls.marginal ||
        x.error != y.error) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("classify: strict regions and boundary ties") {
  CHECK(axis_label(StableAxis::X) == 'x');
  CHECK(axis_label(StableAxis::Y) == 'y');
  CHECK(axis_label(StableAxis::Z) == 'z');

  // strict X: D above both 0 and 2B
  CHECK(classify(1.0, 3.0).axis == StableAxis::X);
  CHECK_FALSE(classify(1.0, 3.0).marginal);
  CHECK(classify(-1.0, 0.5).axis == StableAxis::X);
  // strict Y: D below both 0 and -2B
  CHECK(classify(1.0, -3.0).axis == StableAxis::Y);
  CHECK(classify(-2.0, -0.1).axis == StableAxis::Y);
  // interior Z
  CHECK(classify(1.0, 1.0).axis == StableAxis::Z);
  CHECK_FALSE(classify(1.0, 1.0).marginal);
  CHECK(classify(1.0, -1.9).axis == StableAxis::Z);
  CHECK(classify(0.5, 0.0).axis == StableAxis::Z);

  // exact ties fall to Z and are flagged
  for (const auto& [b, d] : {std::pair{1.0, 2.0},
                             std::pair{1.0, -2.0},
                             std::pair{-1.0, 0.0},
                             std::pair{0.0, 0.0}}) {
    const Classified cls = classify(b, d);
    CHECK(cls.axis == StableAxis::Z);
    CHECK(cls.marginal);
  }
  // just off the tie the flag clears
  CHECK_FALSE(classify(1.0, 2.0 * (1.0 - 1e-15)).marginal);
  CHECK(classify(1.0, 2.0 * (1.0 + 1e-15)).axis == StableAxis::X);
}

TEST_CASE("stable_orientation: known geometries and the g restriction") {
  const ThermalState t0{0.0};
  // needle against a sphere-like bump (both curvatures equal, positive):
  // no in-plane anisotropy, D = 0, sits in the Z region
  const SurfacePatch bump{1e-6, 5e4, 5e4};
  const StabilityResult needle =
      stable_orientation(pc_particle(0.2), bump, t0);
  CHECK(needle.cls.axis == StableAxis::Z);
  CHECK_FALSE(needle.cls.marginal);
  CHECK(needle.breakdown.D() == 0.0);

  // pancake inside a spherical cavity also prefers the axis orientation
  const SurfacePatch cavity{1e-6, -5e4, -5e4};
  CHECK(stable_orientation(pc_particle(0.7), cavity, t0).cls.axis ==
        StableAxis::Z);

  // the classification is just classify() on the assembled coefficients
  const SurfacePatch saddle{1e-6, 1e5, -1e5};
  const StabilityResult r = stable_orientation(pc_particle(0.2), saddle, t0);
  const Classified direct = classify(r.breakdown.B, r.breakdown.D());
  CHECK(r.cls.axis == direct.axis);
  CHECK(r.cls.marginal == direct.marginal);
  CHECK(r.breakdown.D() ==
        r.breakdown.C * (r.breakdown.u1 - r.breakdown.u2));

  CHECK_THROWS_AS(
      stable_orientation(pc_particle(0.2),
                         SurfacePatch{1e-6, 0.0, 0.0, 0.01, 0.0}, t0),
      std::domain_error);
  CHECK_THROWS_AS(
      stable_orientation(pc_particle(0.2),
                         SurfacePatch{1e-6, 0.0, 0.0, 0.0, -0.02}, t0),
      std::domain_error);
}

TEST_CASE("axis specs: naming round-trip and grid values") {
  for (ScanAxis a : {ScanAxis::DOverR1, ScanAxis::R1OverR2, ScanAxis::Distance,
                     ScanAxis::Temperature}) {
    CHECK(scan_axis_from_name(scan_axis_name(a)) == a);
  }
  CHECK(scan_axis_name(ScanAxis::DOverR1) == "d_over_R1");
  CHECK(scan_axis_name(ScanAxis::Distance) == "d");
  CHECK_THROWS_AS(scan_axis_from_name("R2_over_R1"), std::invalid_argument);

  const AxisSpec axis{ScanAxis::Distance, 0.5, 2.5, 5};
  CHECK(axis.value(0) == 0.5);
  CHECK(axis.value(4) == 2.5);
  CHECK(axis.value(2) == doctest::Approx(1.5).epsilon(1e-15));
  const AxisSpec pinned{ScanAxis::Temperature, 77.0, 400.0, 1};
  CHECK(pinned.value(0) == 77.0);
}

TEST_CASE("cell_inputs: the d/R1 axis sets separation and curvature sign") {
  GridSpec spec = pc_grid({ScanAxis::DOverR1, -0.3, 0.3, 7},
                          {ScanAxis::R1OverR2, -2.0, 2.0, 5},
                          {20.0, 1.0, 1.0, 0.0});

  const CellInputs convex = cell_inputs(spec, 0.1, 1.0);
  CHECK(convex.patch.d == doctest::Approx(2e-6).epsilon(1e-15));
  CHECK(convex.patch.u1() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(convex.patch.u2() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(convex.thermal.temperature == 0.0);

  // negative d/R1 keeps d positive and flips the curvature
  const CellInputs concave = cell_inputs(spec, -0.1, 1.0);
  CHECK(concave.patch.d == doctest::Approx(2e-6).epsilon(1e-15));
  CHECK(concave.patch.u1() == doctest::Approx(-0.1).epsilon(1e-15));

  // the ratio axis scales the second curvature: R1/R2 = 2 -> u2 = 2 u1
  const CellInputs saddle = cell_inputs(spec, 0.1, -2.0);
  CHECK(saddle.patch.u2() == doctest::Approx(-0.2).epsilon(1e-15));

  CHECK_THROWS_AS(cell_inputs(spec, 0.0, 1.0), std::domain_error);
  spec.fixed.r1_um = 0.0;
  CHECK_THROWS_AS(cell_inputs(spec, 0.1, 1.0), std::domain_error);
}

TEST_CASE("cell_inputs: distance and temperature axes, fixed fallbacks") {
  const GridSpec spec = pc_grid({ScanAxis::Distance, 0.5, 4.0, 8},
                                {ScanAxis::Temperature, 0.0, 600.0, 4},
                                {50.0, 0.5, 1.0, 300.0});
  const CellInputs in = cell_inputs(spec, 2.0, 150.0);
  CHECK(in.patch.d == doctest::Approx(2e-6).epsilon(1e-15));
  CHECK(in.patch.inv_r1 == doctest::Approx(1.0 / 50e-6).epsilon(1e-15));
  CHECK(in.patch.inv_r2 == doctest::Approx(0.5 / 50e-6).epsilon(1e-15));
  CHECK(in.patch.g1 == 0.0);
  CHECK(in.patch.g2 == 0.0);
  CHECK(in.thermal.temperature == 150.0);
  CHECK(cell_inputs(spec, 2.0, 0.0).thermal.temperature == 0.0);
  CHECK_THROWS_AS(cell_inputs(spec, 0.0, 150.0), std::domain_error);
  CHECK_THROWS_AS(cell_inputs(spec, -1.0, 150.0), std::domain_error);
  CHECK_THROWS_AS(cell_inputs(spec, 2.0, -10.0), std::domain_error);

  // r1_um = 0 means a flat reference patch when no d/R1 axis needs a scale
  GridSpec flat = spec;
  flat.fixed.r1_um = 0.0;
  const CellInputs f = cell_inputs(flat, 2.0, 150.0);
  CHECK(f.patch.inv_r1 == 0.0);
  CHECK(f.patch.inv_r2 == 0.0);
}

TEST_CASE("scan: layout, spec echo and per-cell classification") {
  const GridSpec spec = pc_grid({ScanAxis::DOverR1, 0.05, 0.15, 3},
                                {ScanAxis::R1OverR2, -1.0, 1.0, 2},
                                {20.0, 1.0, 1.0, 0.0});
  const Particle needle = pc_particle(0.2);
  const StabilityGrid grid = scan(spec, needle);

  REQUIRE(grid.cells.size() == 6);
  CHECK(grid.error_count() == 0);
  CHECK(grid.spec.axis1.count == 3);
  CHECK(grid.particle.geometry.n3 == needle.geometry.n3);
  for (int i2 = 0; i2 < 2; ++i2) {
    for (int i1 = 0; i1 < 3; ++i1) {
      const GridCell& cell = grid.at(i1, i2);
      CHECK(cell.axis1 == spec.axis1.value(i1));
      CHECK(cell.axis2 == spec.axis2.value(i2));
      REQUIRE(cell.ok());
      // each cell agrees with a direct single-point evaluation
      const CellInputs in = cell_inputs(spec, cell.axis1, cell.axis2);
      const StabilityResult direct =
          stable_orientation(needle, in.patch, in.thermal);
      CHECK(cell.A == direct.breakdown.A);
      CHECK(cell.D == direct.breakdown.D());
      CHECK(cell.cls.axis == direct.cls.axis);
    }
  }

  const auto frac = grid.fractions();
  CHECK(frac[0] + frac[1] + frac[2] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("scan: failed cells are recorded, not thrown") {
  // the middle axis1 value is d/R1 = 0, unusable by construction
  const GridSpec spec = pc_grid({ScanAxis::DOverR1, -0.1, 0.1, 3},
                                {ScanAxis::R1OverR2, 0.0, 1.0, 2},
                                {20.0, 1.0, 1.0, 0.0});
  const StabilityGrid grid = scan(spec, pc_particle(0.2));
  CHECK(grid.error_count() == 2);
  for (int i2 = 0; i2 < 2; ++i2) {
    const GridCell& bad = grid.at(1, i2);
    CHECK_FALSE(bad.ok());
    CHECK(bad.error.find("d/R1") != std::string::npos);
    CHECK(std::isnan(bad.A));
    CHECK(std::isnan(bad.D));
    CHECK(grid.at(0, i2).ok());
    CHECK(grid.at(2, i2).ok());
  }
  // fractions renormalize over the surviving cells
  const auto frac = grid.fractions();
  CHECK(frac[0] + frac[1] + frac[2] == doctest::Approx(1.0).epsilon(1e-15));

  // an all-error grid reports zero fractions rather than dividing by zero
  const GridSpec broken = pc_grid({ScanAxis::DOverR1, 0.0, 0.0, 1},
                                  {ScanAxis::R1OverR2, 1.0, 1.0, 1},
                                  {20.0, 1.0, 1.0, 0.0});
  const auto none = scan(broken, pc_particle(0.2)).fractions();
  CHECK(none[0] == 0.0);
  CHECK(none[1] == 0.0);
  CHECK(none[2] == 0.0);
}

TEST_CASE("scan rejects malformed grids") {
  const AxisSpec ok1{ScanAxis::DOverR1, 0.05, 0.15, 3};
  const AxisSpec ok2{ScanAxis::R1OverR2, -1.0, 1.0, 2};
  CHECK_THROWS_AS(scan(pc_grid({ScanAxis::DOverR1, 0.0, 1.0, 0}, ok2),
                       pc_particle(0.2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(scan(pc_grid(ok1, {ScanAxis::DOverR1, 0.0, 1.0, 2}),
                       pc_particle(0.2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(scan_serial(pc_grid(ok1, ok1), pc_particle(0.2)),
                  std::invalid_argument);
}

TEST_CASE("parallel and serial scans produce identical grids") {
  // mixed content on purpose: an error column, a sign change, both axes
  const GridSpec spec = pc_grid({ScanAxis::DOverR1, -0.2, 0.2, 9},
                                {ScanAxis::R1OverR2, -2.0, 2.0, 7},
                                {20.0, 1.0, 1.0, 0.0});
  const Particle pancake = pc_particle(0.7);
  const StabilityGrid par = scan(spec, pancake);
  const StabilityGrid ser = scan_serial(spec, pancake);
  CHECK(same_cells(par, ser));

  const GridSpec thermal = pc_grid({ScanAxis::Distance, 0.5, 3.0, 4},
                                   {ScanAxis::Temperature, 0.0, 600.0, 3},
                                   {50.0, -1.0, 1.0, 300.0});
  CHECK(same_cells(scan(thermal, pancake), scan_serial(thermal, pancake)));
}

TEST_CASE("1x1 grid degenerates to a single pinned cell") {
  const GridSpec spec = pc_grid({ScanAxis::DOverR1, 0.1, 0.9, 1},
                                {ScanAxis::R1OverR2, -1.5, 3.0, 1},
                                {20.0, 1.0, 1.0, 0.0});
  const StabilityGrid grid = scan(spec, pc_particle(0.2));
  REQUIRE(grid.cells.size() == 1);
  CHECK(grid.at(0, 0).axis1 == 0.1);
  CHECK(grid.at(0, 0).axis2 == -1.5);
  CHECK(grid.at(0, 0).ok());
}
