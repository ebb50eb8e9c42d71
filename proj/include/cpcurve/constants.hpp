// Physical constants (SI, CODATA 2018 exact values) and unit helpers.
// The library works in SI metres/joules internally; the CLI converts
// from microns at the boundary.

#pragma once

namespace cpcurve::constants {

inline constexpr double hbar = 1.054571817e-34;      // reduced Planck constant [J s]
inline constexpr double c_light = 2.99792458e8;      // speed of light [m/s]
inline constexpr double k_boltzmann = 1.380649e-23;  // Boltzmann constant [J/K]

inline constexpr double micron = 1e-6;  // [m]

}  // namespace cpcurve::constants
