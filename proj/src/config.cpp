#include "cpcurve/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"

#include "cpcurve/beta.hpp"
#include "cpcurve/constants.hpp"

namespace cpcurve {

namespace {

using nlohmann::json;

void expect_keys(const json& j, std::initializer_list<const char*> allowed,
                 const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

double number(const json& j, const char* key, const char* where) {
  const json& v = j.at(key);
  if (!v.is_number()) {
    throw ConfigError(std::string(where) + "." + key + " must be a number");
  }
  return v.get<double>();
}

int integer(const json& j, const char* key, const char* where) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError(std::string(where) + "." + key + " must be an integer");
  }
  return v.get<int>();
}

void parse_axis(const json& j, const char* where, AxisConfig& axis) {
  expect_keys(j, {"name", "min", "max", "count"}, where);
  if (j.contains("name")) axis.name = j.at("name").get<std::string>();
  if (j.contains("min")) axis.min = number(j, "min", where);
  if (j.contains("max")) axis.max = number(j, "max", where);
  if (j.contains("count")) axis.count = integer(j, "count", where);
}

json axis_to_json(const AxisConfig& axis) {
  return {{"name", axis.name},
          {"min", axis.min},
          {"max", axis.max},
          {"count", axis.count}};
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

ScanAxis checked_axis(const std::string& name) {
  try {
    return scan_axis_from_name(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  // A previous output document can serve directly as a fixture: unwrap the
  // resolved configuration it embeds.
  if (j.contains("schema") && j.contains("config")) j = j.at("config");

  RunConfig cfg;
  try {
    expect_keys(j,
                {"command", "particle", "patch", "orientation", "temperature",
                 "grid", "beta", "output", "tolerances"},
                "top level");
    if (j.contains("command")) cfg.command = j.at("command").get<std::string>();

    if (j.contains("particle")) {
      const json& p = j.at("particle");
      expect_keys(p, {"n3", "volume_um3", "R_um", "L_um", "material"},
                  "particle");
      if (p.contains("n3")) cfg.n3 = number(p, "n3", "particle");
      if (p.contains("volume_um3")) {
        cfg.volume_um3 = number(p, "volume_um3", "particle");
      }
      if (p.contains("R_um")) cfg.r_um = number(p, "R_um", "particle");
      if (p.contains("L_um")) cfg.l_um = number(p, "L_um", "particle");
      if (p.contains("material")) {
        const json& m = p.at("material");
        if (m.is_string()) {
          cfg.material = m.get<std::string>();
          cfg.oscillator.reset();
        } else if (m.is_object()) {
          expect_keys(m, {"C_UV", "C_IR", "w_UV", "w_IR"}, "particle.material");
          cfg.oscillator =
              TwoOscillator{number(m, "C_UV", "material"),
                            number(m, "C_IR", "material"),
                            number(m, "w_UV", "material"),
                            number(m, "w_IR", "material")};
          cfg.material = "inline";
        } else {
          throw ConfigError(
              "particle.material must be a preset name or an oscillator "
              "object");
        }
      }
    }

    if (j.contains("patch")) {
      const json& p = j.at("patch");
      expect_keys(p, {"d_um", "R1_um", "R2_um", "g1", "g2"}, "patch");
      if (p.contains("d_um")) cfg.d_um = number(p, "d_um", "patch");
      if (p.contains("R1_um")) cfg.r1_um = number(p, "R1_um", "patch");
      if (p.contains("R2_um")) cfg.r2_um = number(p, "R2_um", "patch");
      if (p.contains("g1")) cfg.g1 = number(p, "g1", "patch");
      if (p.contains("g2")) cfg.g2 = number(p, "g2", "patch");
    }

    if (j.contains("orientation")) {
      const json& o = j.at("orientation");
      expect_keys(o, {"theta_deg", "phi_deg"}, "orientation");
      if (o.contains("theta_deg")) {
        cfg.theta_deg = number(o, "theta_deg", "orientation");
      }
      if (o.contains("phi_deg")) {
        cfg.phi_deg = number(o, "phi_deg", "orientation");
      }
    }

    if (j.contains("temperature")) {
      if (!j.at("temperature").is_number()) {
        throw ConfigError("temperature must be a number");
      }
      cfg.temperature = j.at("temperature").get<double>();
    }

    if (j.contains("grid")) {
      const json& g = j.at("grid");
      expect_keys(g, {"axis1", "axis2", "R1_um", "R1_over_R2"}, "grid");
      if (g.contains("axis1")) parse_axis(g.at("axis1"), "grid.axis1", cfg.axis1);
      if (g.contains("axis2")) parse_axis(g.at("axis2"), "grid.axis2", cfg.axis2);
      if (g.contains("R1_um")) cfg.scan_r1_um = number(g, "R1_um", "grid");
      if (g.contains("R1_over_R2")) {
        cfg.r1_over_r2 = number(g, "R1_over_R2", "grid");
      }
    }

    if (j.contains("beta")) {
      const json& b = j.at("beta");
      expect_keys(b, {"P", "p", "q", "all", "xi_min", "xi_max", "xi_count"},
                  "beta");
      if (b.contains("P")) cfg.beta_pol = b.at("P").get<std::string>();
      if (b.contains("p")) cfg.beta_p = integer(b, "p", "beta");
      if (b.contains("q")) cfg.beta_q = integer(b, "q", "beta");
      if (b.contains("all")) cfg.beta_all_indices = b.at("all").get<bool>();
      if (b.contains("xi_min")) cfg.xi_min = number(b, "xi_min", "beta");
      if (b.contains("xi_max")) cfg.xi_max = number(b, "xi_max", "beta");
      if (b.contains("xi_count")) cfg.xi_count = integer(b, "xi_count", "beta");
    }

    if (j.contains("output")) {
      const json& o = j.at("output");
      expect_keys(o, {"path", "format"}, "output");
      if (o.contains("path")) cfg.output_path = o.at("path").get<std::string>();
      if (o.contains("format")) cfg.format = o.at("format").get<std::string>();
    }

    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      expect_keys(t, {"matsubara_rel_tol", "quad_tol", "validity_threshold"},
                  "tolerances");
      if (t.contains("matsubara_rel_tol")) {
        cfg.tol.matsubara_rel_tol = number(t, "matsubara_rel_tol", "tolerances");
      }
      if (t.contains("quad_tol")) {
        cfg.tol.quad_tol = number(t, "quad_tol", "tolerances");
      }
      if (t.contains("validity_threshold")) {
        cfg.tol.validity_threshold =
            number(t, "validity_threshold", "tolerances");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream ifs(path);
  if (!ifs) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << ifs.rdbuf();
  return config_from_json(buf.str());
}

std::string config_to_json(const RunConfig& cfg) {
  json particle;
  if (cfg.n3) particle["n3"] = *cfg.n3;
  if (cfg.volume_um3) particle["volume_um3"] = *cfg.volume_um3;
  if (cfg.r_um) particle["R_um"] = *cfg.r_um;
  if (cfg.l_um) particle["L_um"] = *cfg.l_um;
  if (cfg.oscillator) {
    particle["material"] = {{"C_UV", cfg.oscillator->c_uv},
                            {"C_IR", cfg.oscillator->c_ir},
                            {"w_UV", cfg.oscillator->w_uv},
                            {"w_IR", cfg.oscillator->w_ir}};
  } else {
    particle["material"] = cfg.material;
  }

  json j;
  j["command"] = cfg.command;
  j["particle"] = std::move(particle);
  j["patch"] = {{"d_um", cfg.d_um},
                {"R1_um", cfg.r1_um},
                {"R2_um", cfg.r2_um},
                {"g1", cfg.g1},
                {"g2", cfg.g2}};
  j["orientation"] = {{"theta_deg", cfg.theta_deg}, {"phi_deg", cfg.phi_deg}};
  j["temperature"] = cfg.temperature;
  j["grid"] = {{"axis1", axis_to_json(cfg.axis1)},
               {"axis2", axis_to_json(cfg.axis2)},
               {"R1_um", cfg.scan_r1_um},
               {"R1_over_R2", cfg.r1_over_r2}};
  j["beta"] = {{"P", cfg.beta_pol},      {"p", cfg.beta_p},
               {"q", cfg.beta_q},        {"all", cfg.beta_all_indices},
               {"xi_min", cfg.xi_min},   {"xi_max", cfg.xi_max},
               {"xi_count", cfg.xi_count}};
  j["output"] = {{"path", cfg.output_path}, {"format", effective_format(cfg)}};
  j["tolerances"] = {{"matsubara_rel_tol", cfg.tol.matsubara_rel_tol},
                     {"quad_tol", cfg.tol.quad_tol},
                     {"validity_threshold", cfg.tol.validity_threshold}};
  return j.dump(2);
}

std::string effective_format(const RunConfig& cfg) {
  if (!cfg.format.empty()) return cfg.format;
  return cfg.command == "potential" ? "text" : "csv";
}

void validate(const RunConfig& cfg) {
  require(cfg.command == "beta" || cfg.command == "potential" ||
              cfg.command == "scan",
          "command must be one of beta, potential, scan");
  require(cfg.tol.matsubara_rel_tol >= 0.0,
          "tolerances.matsubara_rel_tol must be >= 0");
  require(cfg.tol.quad_tol > 0.0, "tolerances.quad_tol must be > 0");
  require(cfg.tol.validity_threshold > 0.0 && cfg.tol.validity_threshold <= 1.0,
          "tolerances.validity_threshold must lie in (0, 1]");

  if (cfg.command == "beta") {
    require(cfg.beta_pol == "E" || cfg.beta_pol == "M",
            "beta.P must be 'E' or 'M'");
    if (!cfg.beta_all_indices) {
      const Polarization pol =
          cfg.beta_pol == "E" ? Polarization::E : Polarization::M;
      require(beta_index_valid({pol, cfg.beta_p, cfg.beta_q}),
              "beta: invalid (p,q) combination: p=" + std::to_string(cfg.beta_p) +
                  " q=" + std::to_string(cfg.beta_q));
    }
    require(cfg.xi_min >= 0.0, "beta.xi_min must be >= 0");
    require(cfg.xi_max >= cfg.xi_min, "beta.xi_max must be >= xi_min");
    require(cfg.xi_count >= 1, "beta.xi_count must be >= 1");
    require(effective_format(cfg) == "csv", "beta output format must be csv");
    return;
  }

  // particle: either n3 + volume or the two semi-axes
  if (cfg.n3) {
    require(!cfg.r_um && !cfg.l_um,
            "give either particle.n3 (+volume_um3) or R_um+L_um, not both");
    require(*cfg.n3 > 0.0 && *cfg.n3 < 1.0, "particle.n3 must lie in (0,1)");
    require(cfg.volume_um3.has_value(),
            "particle.volume_um3 is required together with n3");
    require(*cfg.volume_um3 > 0.0, "particle.volume_um3 must be positive");
  } else {
    require(cfg.r_um.has_value() && cfg.l_um.has_value(),
            "particle needs n3+volume_um3 or R_um+L_um");
    require(!cfg.volume_um3.has_value(),
            "particle.volume_um3 conflicts with R_um+L_um (volume is derived)");
    require(*cfg.r_um > 0.0 && *cfg.l_um > 0.0,
            "particle semi-axes must be positive");
  }
  if (cfg.oscillator) {
    require(cfg.oscillator->c_uv > 0.0 && cfg.oscillator->c_ir > 0.0 &&
                cfg.oscillator->w_uv > 0.0 && cfg.oscillator->w_ir > 0.0,
            "inline oscillator parameters must be positive");
  } else {
    try {
      material_preset(cfg.material);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  require(cfg.temperature >= 0.0, "temperature must be >= 0");

  if (cfg.command == "potential") {
    require(cfg.d_um > 0.0, "patch.d_um must be positive");
    for (const auto& [r_um, name] :
         {std::pair{cfg.r1_um, "R1"}, std::pair{cfg.r2_um, "R2"}}) {
      if (r_um != 0.0) {
        require(std::fabs(cfg.d_um / r_um) < 1.0,
                std::string("patch: |d/") + name +
                    "| must be < 1 for the curvature expansion");
      }
    }
    const std::string fmt = effective_format(cfg);
    require(fmt == "text" || fmt == "json",
            "potential output format must be text or json");
    return;
  }

  // scan
  const ScanAxis a1 = checked_axis(cfg.axis1.name);
  const ScanAxis a2 = checked_axis(cfg.axis2.name);
  require(a1 != a2, "grid axes must differ");
  for (const auto& [axis, where] :
       {std::pair{&cfg.axis1, "grid.axis1"}, std::pair{&cfg.axis2, "grid.axis2"}}) {
    require(axis->count >= 1, std::string(where) + ".count must be >= 1");
    require(axis->min <= axis->max,
            std::string(where) + " must satisfy min <= max");
    const ScanAxis kind = checked_axis(axis->name);
    if (kind == ScanAxis::Distance) {
      require(axis->min > 0.0, std::string(where) + ": distances must be > 0");
    }
    if (kind == ScanAxis::Temperature) {
      require(axis->min >= 0.0,
              std::string(where) + ": temperatures must be >= 0");
    }
  }
  if (a1 == ScanAxis::DOverR1 || a2 == ScanAxis::DOverR1) {
    require(cfg.scan_r1_um != 0.0,
            "grid.R1_um must be nonzero for a d_over_R1 axis");
  }
  const std::string fmt = effective_format(cfg);
  require(fmt == "csv" || fmt == "json",
          "scan output format must be csv or json");
}

Particle make_particle(const RunConfig& cfg) {
  using constants::micron;
  SpheroidGeometry geom =
      cfg.n3 ? spheroid_from_n3(*cfg.n3, *cfg.volume_um3 * 1e-18)
             : spheroid_from_axes(*cfg.r_um * micron, *cfg.l_um * micron);
  MaterialModel mat = cfg.oscillator ? MaterialModel::dielectric(*cfg.oscillator)
                                     : material_preset(cfg.material);
  return {geom, mat};
}

SurfacePatch make_patch(const RunConfig& cfg) {
  using constants::micron;
  const auto inv = [](double r_um) {
    return r_um == 0.0 ? 0.0 : 1.0 / (r_um * micron);
  };
  return {cfg.d_um * micron, inv(cfg.r1_um), inv(cfg.r2_um), cfg.g1, cfg.g2};
}

Orientation make_orientation(const RunConfig& cfg) {
  constexpr double deg = 3.14159265358979323846 / 180.0;
  return {cfg.theta_deg * deg, cfg.phi_deg * deg};
}

ThermalState make_thermal(const RunConfig& cfg) { return {cfg.temperature}; }

GridSpec make_grid_spec(const RunConfig& cfg) {
  const auto axis = [](const AxisConfig& a) {
    return AxisSpec{scan_axis_from_name(a.name), a.min, a.max, a.count};
  };
  return {axis(cfg.axis1), axis(cfg.axis2),
          ScanFixed{cfg.scan_r1_um, cfg.r1_over_r2, cfg.d_um, cfg.temperature}};
}

}  // namespace cpcurve
