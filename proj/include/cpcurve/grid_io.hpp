// CSV/JSON emission for stability grids and the coefficient-table dump.

#pragma once

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpcurve/beta.hpp"
#include "cpcurve/stability.hpp"

namespace cpcurve {

// Output-path problems (unwritable file, missing directory).
struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* grid_schema = "cpcurve.grid.v1";
inline constexpr const char* beta_schema = "cpcurve.beta.v1";

// Grid CSV: '#'-prefixed metadata header (schema, particle, axes, fixed
// parameters), then rows axis1,axis2,axis_label,A,B,C,D,marginal_flag in
// row-major order. Failed cells are omitted from the data rows and listed
// as trailing '# error i1 i2 message' comments.
void write_grid_csv(std::ostream& os, const StabilityGrid& grid);

// Grid JSON: schema, the fully resolved run configuration (as produced by
// config_to_json, enabling byte-identical re-runs), axis specs and the
// row-major cell list including per-cell errors.
void write_grid_json(std::ostream& os, const StabilityGrid& grid,
                     const std::string& resolved_config_json);

// Coefficient dump CSV: columns P,p,q,xi,value.
struct BetaSample {
  BetaIndex idx;
  double xi;
  double value;
};
void write_beta_csv(std::ostream& os, const std::vector<BetaSample>& rows);

// Opens path for writing and streams via the writer callback; throws
// FileError when the file cannot be created or written.
void write_file(const std::string& path,
                const std::function<void(std::ostream&)>& writer);

}  // namespace cpcurve
