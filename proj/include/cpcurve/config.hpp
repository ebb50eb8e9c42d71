// Run configuration: JSON document and/or command-line flags, validated and
// resolved into the engine inputs. User-facing units are microns, degrees
// and kelvin.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "cpcurve/particle.hpp"
#include "cpcurve/potential.hpp"
#include "cpcurve/stability.hpp"

namespace cpcurve {

// Schema violations and out-of-range user input (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AxisConfig {
  std::string name;  // "d_over_R1", "R1_over_R2", "d", "T"
  double min, max;
  int count;
};

struct RunConfig {
  std::string command = "potential";  // "beta" | "potential" | "scan"

  // particle: either n3 directly or semi-axes R, L; volume in um^3
  std::optional<double> n3;
  std::optional<double> volume_um3;
  std::optional<double> r_um, l_um;
  std::string material = "gold-PC";               // preset name, or
  std::optional<TwoOscillator> oscillator;        // inline oscillator params

  // surface patch (signed radii; 0 = flat direction)
  double d_um = 1.0;
  double r1_um = 0.0;
  double r2_um = 0.0;
  double g1 = 0.0, g2 = 0.0;

  // orientation and temperature
  double theta_deg = 0.0;
  double phi_deg = 0.0;
  double temperature = 300.0;

  // scan grid; fixed scan parameters reuse d_um/temperature above
  AxisConfig axis1{"d_over_R1", -0.3, 0.3, 100};
  AxisConfig axis2{"R1_over_R2", -2.0, 2.0, 100};
  double scan_r1_um = 20.0;
  double r1_over_r2 = 1.0;

  // beta dump
  std::string beta_pol = "E";
  int beta_p = 0;
  int beta_q = 1;
  bool beta_all_indices = false;
  double xi_min = 0.0, xi_max = 5.0;
  int xi_count = 1;

  // output
  std::string output_path;  // empty = stdout
  std::string format;       // "csv" | "json" (beta/scan), "text" | "json"
                            // (potential); empty = per-command default

  Tolerances tol{};
};

// Parses a JSON document. Accepts either a bare configuration object or a
// previous JSON output file (the "config" member is then unwrapped), so
// emitted results can be re-ingested as fixtures. Unknown keys are a
// ConfigError, as are type mismatches.
RunConfig config_from_json(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Serializes the fully resolved configuration (every field populated).
std::string config_to_json(const RunConfig& cfg);

// Resolves an empty format field to the command default ("text" for
// potential, "csv" otherwise).
std::string effective_format(const RunConfig& cfg);

// Range/consistency checks; throws ConfigError with a field-specific
// message.
void validate(const RunConfig& cfg);

// Engine input builders (validate first).
Particle make_particle(const RunConfig& cfg);
SurfacePatch make_patch(const RunConfig& cfg);
Orientation make_orientation(const RunConfig& cfg);
ThermalState make_thermal(const RunConfig& cfg);
GridSpec make_grid_spec(const RunConfig& cfg);

}  // namespace cpcurve
