// cpcurve command-line front end.
//
// Three subcommands share one configuration schema: `beta` dumps the
// response-coefficient table, `potential` evaluates a single particle/patch
// configuration, `scan` produces a stability diagram over a 2d grid.
// Options given on the command line override values from --config.
//
// Exit codes: 0 success, 2 configuration/schema error, 3 numerical failure,
// 4 unwritable output path.

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cpcurve/config.hpp"
#include "cpcurve/constants.hpp"
#include "cpcurve/grid_io.hpp"
#include "cpcurve/potential.hpp"
#include "cpcurve/stability.hpp"

namespace {

using namespace cpcurve;

constexpr const char* kPotentialSchema = "cpcurve.potential.v1";

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Streams to the configured path, or to stdout when no path is set.
void emit(const std::string& path,
          const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(std::cout);
  } else {
    write_file(path, writer);
    std::cerr << "wrote " << path << "\n";
  }
}

// ---------------------------------------------------------------------------
// beta

int run_beta(const RunConfig& cfg) {
  validate(cfg);
  std::vector<BetaSample> rows;
  std::vector<double> xis;
  if (cfg.xi_count <= 1) {
    xis.push_back(cfg.xi_min);
  } else {
    for (int i = 0; i < cfg.xi_count; ++i) {
      xis.push_back(cfg.xi_min +
                    i * (cfg.xi_max - cfg.xi_min) / (cfg.xi_count - 1));
    }
  }
  if (cfg.beta_all_indices) {
    for (double xi : xis) {
      const auto values = beta_all(xi);
      for (int s = 0; s < beta_slot_count; ++s) {
        rows.push_back({beta_indices()[s], xi, values[s]});
      }
    }
  } else {
    const Polarization pol =
        cfg.beta_pol == "E" ? Polarization::E : Polarization::M;
    const BetaIndex idx{pol, cfg.beta_p, cfg.beta_q};
    for (double xi : xis) rows.push_back({idx, xi, beta(idx, xi)});
  }
  emit(cfg.output_path, [&](std::ostream& os) { write_beta_csv(os, rows); });
  return 0;
}

// ---------------------------------------------------------------------------
// potential

void print_potential_text(std::ostream& os, const PotentialBreakdown& bd,
                          bool classified) {
  os << "U_reduced   = " << fmt_g(bd.u_reduced) << "\n";
  os << "U_SI [J]    = " << fmt_g(bd.u_si) << "\n";
  os << "A           = " << fmt_g(bd.A) << "\n";
  os << "B           = " << fmt_g(bd.B) << "\n";
  os << "C           = " << fmt_g(bd.C) << "\n";
  os << "D           = " << fmt_g(bd.D()) << "\n";
  if (classified) {
    const Classified cls = classify(bd.B, bd.D());
    os << "stable axis = " << axis_label(cls.axis)
       << (cls.marginal ? " (marginal)" : "") << "\n";
  } else {
    os << "stable axis = n/a (g1/g2 nonzero)\n";
  }
  for (const std::string& w : bd.warnings) os << "warning: " << w << "\n";
}

nlohmann::json potential_json(const RunConfig& cfg,
                              const PotentialBreakdown& bd, bool classified) {
  nlohmann::json result{{"A", bd.A},
                        {"B", bd.B},
                        {"C", bd.C},
                        {"Gc", bd.Gc},
                        {"D", bd.D()},
                        {"u1", bd.u1},
                        {"u2", bd.u2},
                        {"u_reduced", bd.u_reduced},
                        {"u_si_J", bd.u_si},
                        {"warnings", bd.warnings}};
  if (classified) {
    const Classified cls = classify(bd.B, bd.D());
    result["stable_axis"] = std::string(1, axis_label(cls.axis));
    result["marginal"] = cls.marginal;
  } else {
    result["stable_axis"] = nullptr;
    result["marginal"] = nullptr;
  }
  return nlohmann::json{{"schema", kPotentialSchema},
                        {"config", nlohmann::json::parse(config_to_json(cfg))},
                        {"result", result}};
}

void report_potential(const RunConfig& cfg, const PotentialBreakdown& bd) {
  const bool classified = cfg.g1 == 0.0 && cfg.g2 == 0.0;
  if (effective_format(cfg) == "json") {
    const nlohmann::json doc = potential_json(cfg, bd, classified);
    emit(cfg.output_path,
         [&](std::ostream& os) { os << doc.dump(2) << "\n"; });
  } else {
    emit(cfg.output_path,
         [&](std::ostream& os) { print_potential_text(os, bd, classified); });
  }
}

int run_potential(const RunConfig& cfg) {
  validate(cfg);
  const PotentialBreakdown bd =
      potential(make_particle(cfg), make_patch(cfg), make_orientation(cfg),
                make_thermal(cfg), cfg.tol);
  report_potential(cfg, bd);
  return 0;
}

// ---------------------------------------------------------------------------
// scan

int run_scan(const RunConfig& cfg) {
  validate(cfg);
  const Particle particle = make_particle(cfg);
  const GridSpec spec = make_grid_spec(cfg);

  if (spec.axis1.count == 1 && spec.axis2.count == 1) {
    // A 1x1 grid is a single-point evaluation; produce the full potential
    // report for that cell instead of a one-row table.
    const CellInputs in =
        cell_inputs(spec, spec.axis1.value(0), spec.axis2.value(0));
    const PotentialBreakdown bd =
        potential(particle, in.patch, make_orientation(cfg), in.thermal,
                  cfg.tol);
    RunConfig cell_cfg = cfg;  // reported config reflects the resolved cell
    cell_cfg.d_um = in.patch.d / constants::micron;
    cell_cfg.r1_um = in.patch.inv_r1 == 0.0
                         ? 0.0
                         : 1.0 / (in.patch.inv_r1 * constants::micron);
    cell_cfg.r2_um = in.patch.inv_r2 == 0.0
                         ? 0.0
                         : 1.0 / (in.patch.inv_r2 * constants::micron);
    cell_cfg.temperature = in.thermal.temperature;
    if (effective_format(cfg) == "csv") cell_cfg.format = "text";
    report_potential(cell_cfg, bd);
    return 0;
  }

  const StabilityGrid grid = scan(spec, particle, cfg.tol);

  if (effective_format(cfg) == "json") {
    emit(cfg.output_path, [&](std::ostream& os) {
      write_grid_json(os, grid, config_to_json(cfg));
    });
  } else {
    emit(cfg.output_path,
         [&](std::ostream& os) { write_grid_csv(os, grid); });
  }

  const auto frac = grid.fractions();
  char line[128];
  std::snprintf(line, sizeof line, "fractions: x %.3f  y %.3f  z %.3f",
                frac[0], frac[1], frac[2]);
  std::cerr << "grid " << spec.axis1.count << " x " << spec.axis2.count << " ("
            << scan_axis_name(spec.axis1.kind) << " x "
            << scan_axis_name(spec.axis2.kind) << ")\n";
  std::cerr << line << "\n";
  int marginal = 0;
  for (const GridCell& cell : grid.cells) {
    if (cell.ok() && cell.cls.marginal) ++marginal;
  }
  std::cerr << "marginal cells: " << marginal
            << ", failed cells: " << grid.error_count() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// flag staging; values only land in the config when the flag was used

struct CommonFlags {
  std::string config_path;
  double n3 = 0, volume = 0, r = 0, l = 0;
  std::string material;
  double temperature = 0;
  double matsubara_rel_tol = 0, quad_tol = 0, validity_threshold = 0;
  std::string output, format;

  CLI::Option *o_n3 = nullptr, *o_volume = nullptr, *o_r = nullptr,
              *o_l = nullptr, *o_material = nullptr, *o_temperature = nullptr,
              *o_mrt = nullptr, *o_qt = nullptr, *o_vt = nullptr,
              *o_output = nullptr, *o_format = nullptr;

  void attach(CLI::App* sub, bool with_particle) {
    sub->add_option("-c,--config", config_path,
                    "JSON configuration file (flags override it)");
    if (with_particle) {
      o_n3 = sub->add_option("--n3", n3,
                             "depolarizing factor along the symmetry axis");
      o_volume = sub->add_option("--volume", volume,
                                 "particle volume [um^3] (with --n3)");
      o_r = sub->add_option("--R", r, "equatorial semi-axis R [um]");
      o_l = sub->add_option("--L", l, "symmetry-axis length L [um]");
      o_material = sub->add_option(
          "--material", material, "material preset (gold-PC, SiO2-hough)");
      o_temperature =
          sub->add_option("-T,--temperature", temperature, "temperature [K]");
      o_mrt = sub->add_option("--matsubara-rel-tol", matsubara_rel_tol,
                              "relative cutoff for the frequency sum");
      o_qt = sub->add_option("--quad-tol", quad_tol,
                             "tolerance of the T=0 quadrature");
      o_vt = sub->add_option("--validity-threshold", validity_threshold,
                             "|d/R| warning threshold");
    }
    o_output = sub->add_option("-o,--output", output,
                               "output file (default: stdout)");
    o_format = sub->add_option("--format", format, "output format");
  }

  void merge(RunConfig& cfg) const {
    const auto used = [](const CLI::Option* o) { return o && o->count() > 0; };
    if (used(o_n3)) cfg.n3 = n3;
    if (used(o_volume)) cfg.volume_um3 = volume;
    if (used(o_r)) cfg.r_um = r;
    if (used(o_l)) cfg.l_um = l;
    if (used(o_material)) {
      cfg.material = material;
      cfg.oscillator.reset();
    }
    if (used(o_temperature)) cfg.temperature = temperature;
    if (used(o_mrt)) cfg.tol.matsubara_rel_tol = matsubara_rel_tol;
    if (used(o_qt)) cfg.tol.quad_tol = quad_tol;
    if (used(o_vt)) cfg.tol.validity_threshold = validity_threshold;
    if (used(o_output)) cfg.output_path = output;
    if (used(o_format)) cfg.format = format;
  }

  RunConfig base(const std::string& command) const {
    RunConfig cfg =
        config_path.empty() ? RunConfig{} : load_config_file(config_path);
    cfg.command = command;
    return cfg;
  }
};

struct BetaFlags {
  std::string pol;
  int p = 0, q = 0;
  bool all = false;
  double xi = 0, xi_min = 0, xi_max = 0;
  int xi_count = 0;

  CLI::Option *o_pol = nullptr, *o_p = nullptr, *o_q = nullptr,
              *o_xi = nullptr, *o_xi_min = nullptr, *o_xi_max = nullptr,
              *o_xi_count = nullptr;

  void attach(CLI::App* sub) {
    o_pol = sub->add_option("--P", pol, "polarization (E or M)");
    o_p = sub->add_option("--p", p, "derivative order p (0, 2, 3, 4)");
    o_q = sub->add_option("--q", q, "branch index q");
    sub->add_flag("--all", all, "dump all 22 coefficients");
    o_xi = sub->add_option("--xi", xi, "single evaluation point");
    o_xi_min = sub->add_option("--xi-min", xi_min, "grid start");
    o_xi_max = sub->add_option("--xi-max", xi_max, "grid end");
    o_xi_count = sub->add_option("--xi-count", xi_count, "grid size");
  }

  void merge(RunConfig& cfg) const {
    const auto used = [](const CLI::Option* o) { return o && o->count() > 0; };
    if (used(o_pol)) cfg.beta_pol = pol;
    if (used(o_p)) cfg.beta_p = p;
    if (used(o_q)) cfg.beta_q = q;
    if (all) cfg.beta_all_indices = true;
    if (used(o_xi)) {
      cfg.xi_min = cfg.xi_max = xi;
      cfg.xi_count = 1;
    }
    if (used(o_xi_min)) cfg.xi_min = xi_min;
    if (used(o_xi_max)) cfg.xi_max = xi_max;
    if (used(o_xi_count)) cfg.xi_count = xi_count;
  }
};

struct PatchFlags {
  double d = 0, r1 = 0, r2 = 0, g1 = 0, g2 = 0, theta = 0, phi = 0;

  CLI::Option *o_d = nullptr, *o_r1 = nullptr, *o_r2 = nullptr,
              *o_g1 = nullptr, *o_g2 = nullptr, *o_theta = nullptr,
              *o_phi = nullptr;

  void attach(CLI::App* sub) {
    o_d = sub->add_option("-d,--distance", d, "separation d [um]");
    o_r1 = sub->add_option("--R1", r1,
                           "principal radius R1 [um], signed; 0 = flat");
    o_r2 = sub->add_option("--R2", r2,
                           "principal radius R2 [um], signed; 0 = flat");
    o_g1 = sub->add_option("--g1", g1, "third-derivative input g1");
    o_g2 = sub->add_option("--g2", g2, "third-derivative input g2");
    o_theta = sub->add_option("--theta", theta, "polar angle [deg]");
    o_phi = sub->add_option("--phi", phi, "azimuthal angle [deg]");
  }

  void merge(RunConfig& cfg) const {
    const auto used = [](const CLI::Option* o) { return o && o->count() > 0; };
    if (used(o_d)) cfg.d_um = d;
    if (used(o_r1)) cfg.r1_um = r1;
    if (used(o_r2)) cfg.r2_um = r2;
    if (used(o_g1)) cfg.g1 = g1;
    if (used(o_g2)) cfg.g2 = g2;
    if (used(o_theta)) cfg.theta_deg = theta;
    if (used(o_phi)) cfg.phi_deg = phi;
  }
};

struct ScanFlags {
  std::string axis1, axis2;
  double a1_min = 0, a1_max = 0, a2_min = 0, a2_max = 0;
  int a1_count = 0, a2_count = 0;
  double r1 = 0, ratio = 0, d = 0;

  CLI::Option *o_axis1 = nullptr, *o_axis2 = nullptr, *o_a1_min = nullptr,
              *o_a1_max = nullptr, *o_a1_count = nullptr, *o_a2_min = nullptr,
              *o_a2_max = nullptr, *o_a2_count = nullptr, *o_r1 = nullptr,
              *o_ratio = nullptr, *o_d = nullptr;

  void attach(CLI::App* sub) {
    o_axis1 = sub->add_option(
        "--axis1", axis1, "first axis (d_over_R1, R1_over_R2, d, T)");
    o_a1_min = sub->add_option("--axis1-min", a1_min, "first axis start");
    o_a1_max = sub->add_option("--axis1-max", a1_max, "first axis end");
    o_a1_count = sub->add_option("--axis1-count", a1_count, "first axis size");
    o_axis2 = sub->add_option("--axis2", axis2, "second axis");
    o_a2_min = sub->add_option("--axis2-min", a2_min, "second axis start");
    o_a2_max = sub->add_option("--axis2-max", a2_max, "second axis end");
    o_a2_count = sub->add_option("--axis2-count", a2_count, "second axis size");
    o_r1 = sub->add_option("--R1", r1,
                           "fixed R1 [um]; |R1| scales the d_over_R1 axis");
    o_ratio = sub->add_option("--R1-over-R2", ratio, "fixed ratio R1/R2");
    o_d = sub->add_option("-d,--distance", d,
                          "fixed separation d [um] when no axis provides it");
  }

  void merge(RunConfig& cfg) const {
    const auto used = [](const CLI::Option* o) { return o && o->count() > 0; };
    if (used(o_axis1)) cfg.axis1.name = axis1;
    if (used(o_a1_min)) cfg.axis1.min = a1_min;
    if (used(o_a1_max)) cfg.axis1.max = a1_max;
    if (used(o_a1_count)) cfg.axis1.count = a1_count;
    if (used(o_axis2)) cfg.axis2.name = axis2;
    if (used(o_a2_min)) cfg.axis2.min = a2_min;
    if (used(o_a2_max)) cfg.axis2.max = a2_max;
    if (used(o_a2_count)) cfg.axis2.count = a2_count;
    if (used(o_r1)) cfg.scan_r1_um = r1;
    if (used(o_ratio)) cfg.r1_over_r2 = ratio;
    if (used(o_d)) cfg.d_um = d;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Casimir-Polder potential, orientation dependence and stable "
      "orientations of spheroidal nanoparticles near gently curved "
      "reflecting surfaces"};
  app.require_subcommand(1);

  CLI::App* beta_cmd =
      app.add_subcommand("beta", "dump the response-coefficient table");
  beta_cmd->alias("beta-table");
  CommonFlags beta_common;
  BetaFlags beta_flags;
  beta_common.attach(beta_cmd, /*with_particle=*/false);
  beta_flags.attach(beta_cmd);

  CLI::App* pot_cmd = app.add_subcommand(
      "potential", "evaluate one particle/patch configuration");
  CommonFlags pot_common;
  PatchFlags pot_patch;
  pot_common.attach(pot_cmd, /*with_particle=*/true);
  pot_patch.attach(pot_cmd);

  CLI::App* scan_cmd =
      app.add_subcommand("scan", "stability diagram over a 2d grid");
  CommonFlags scan_common;
  ScanFlags scan_flags;
  scan_common.attach(scan_cmd, /*with_particle=*/true);
  scan_flags.attach(scan_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (beta_cmd->parsed()) {
      RunConfig cfg = beta_common.base("beta");
      beta_common.merge(cfg);
      beta_flags.merge(cfg);
      return run_beta(cfg);
    }
    if (pot_cmd->parsed()) {
      RunConfig cfg = pot_common.base("potential");
      pot_common.merge(cfg);
      pot_patch.merge(cfg);
      return run_potential(cfg);
    }
    RunConfig cfg = scan_common.base("scan");
    scan_common.merge(cfg);
    scan_flags.merge(cfg);
    return run_scan(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const FileError& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
}
