#include "cpcurve/grid_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "json.hpp"

namespace cpcurve {

namespace {

using nlohmann::json;

// %.17g always round-trips a double through text.
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string material_string(const MaterialModel& m) {
  return m.kind == MaterialModel::Kind::PerfectConductor
             ? "perfect-conductor"
             : "two-oscillator";
}

void write_axis_comment(std::ostream& os, const char* tag,
                        const AxisSpec& axis) {
  os << "# " << tag << ": name=" << scan_axis_name(axis.kind)
     << " min=" << fmt(axis.min) << " max=" << fmt(axis.max)
     << " count=" << axis.count << "\n";
}

json axis_json(const AxisSpec& axis) {
  return {{"name", scan_axis_name(axis.kind)},
          {"min", axis.min},
          {"max", axis.max},
          {"count", axis.count}};
}

}  // namespace

void write_grid_csv(std::ostream& os, const StabilityGrid& grid) {
  const SpheroidGeometry& g = grid.particle.geometry;
  os << "# schema: " << grid_schema << "\n";
  os << "# particle: n3=" << fmt(g.n3) << " volume_um3=" << fmt(g.volume / 1e-18)
     << " material=" << material_string(grid.particle.material) << "\n";
  write_axis_comment(os, "axis1", grid.spec.axis1);
  write_axis_comment(os, "axis2", grid.spec.axis2);
  const ScanFixed& f = grid.spec.fixed;
  os << "# fixed: R1_um=" << fmt(f.r1_um) << " R1_over_R2=" << fmt(f.r1_over_r2)
     << " d_um=" << fmt(f.d_um) << " T_K=" << fmt(f.temperature) << "\n";
  os << "axis1,axis2,axis_label,A,B,C,D,marginal_flag\n";
  for (const GridCell& cell : grid.cells) {
    if (!cell.ok()) continue;
    os << fmt(cell.axis1) << ',' << fmt(cell.axis2) << ','
       << axis_label(cell.cls.axis) << ',' << fmt(cell.A) << ',' << fmt(cell.B)
       << ',' << fmt(cell.C) << ',' << fmt(cell.D) << ','
       << (cell.cls.marginal ? 1 : 0) << "\n";
  }
  // Failed cells have no well-defined row in the fixed schema; report them
  // as comments so the data block stays parseable.
  const int n1 = grid.spec.axis1.count;
  for (std::size_t k = 0; k < grid.cells.size(); ++k) {
    const GridCell& cell = grid.cells[k];
    if (cell.ok()) continue;
    os << "# error " << (k % n1) << ' ' << (k / n1) << ' ' << cell.error
       << "\n";
  }
}

void write_grid_json(std::ostream& os, const StabilityGrid& grid,
                     const std::string& resolved_config_json) {
  const SpheroidGeometry& g = grid.particle.geometry;
  json j;
  j["schema"] = grid_schema;
  j["config"] = json::parse(resolved_config_json);
  j["axis1"] = axis_json(grid.spec.axis1);
  j["axis2"] = axis_json(grid.spec.axis2);
  const ScanFixed& f = grid.spec.fixed;
  j["fixed"] = {{"R1_um", f.r1_um},
                {"R1_over_R2", f.r1_over_r2},
                {"d_um", f.d_um},
                {"T_K", f.temperature}};
  j["particle"] = {{"n3", g.n3},
                   {"volume_um3", g.volume / 1e-18},
                   {"material", material_string(grid.particle.material)}};
  json cells = json::array();
  const int n1 = grid.spec.axis1.count;
  for (std::size_t k = 0; k < grid.cells.size(); ++k) {
    const GridCell& cell = grid.cells[k];
    json c = {{"i1", static_cast<int>(k % n1)},
              {"i2", static_cast<int>(k / n1)},
              {"axis1", cell.axis1},
              {"axis2", cell.axis2}};
    if (cell.ok()) {
      c["label"] = std::string(1, axis_label(cell.cls.axis));
      c["A"] = cell.A;
      c["B"] = cell.B;
      c["C"] = cell.C;
      c["D"] = cell.D;
      c["marginal"] = cell.cls.marginal;
    } else {
      c["error"] = cell.error;
    }
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  os << j.dump(2) << "\n";
}

void write_beta_csv(std::ostream& os, const std::vector<BetaSample>& rows) {
  os << "# schema: " << beta_schema << "\n";
  os << "P,p,q,xi,value\n";
  for (const BetaSample& row : rows) {
    os << (row.idx.pol == Polarization::E ? 'E' : 'M') << ',' << row.idx.p
       << ',' << row.idx.q << ',' << fmt(row.xi) << ',' << fmt(row.value)
       << "\n";
  }
}

void write_file(const std::string& path,
                const std::function<void(std::ostream&)>& writer) {
  std::ofstream ofs(path);
  if (!ofs) throw FileError("cannot open '" + path + "' for writing");
  writer(ofs);
  ofs.flush();
  if (!ofs) throw FileError("write to '" + path + "' failed");
}

}  // namespace cpcurve
