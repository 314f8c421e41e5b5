#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "socdpt/model.hpp"
#include "socdpt/thermal.hpp"

namespace socdpt {

/// Everything a run needs, read from a `key = value` file. Unknown keys are
/// rejected; `#` starts a comment.
struct RunConfig {
  ModelParams<double> model;
  std::optional<double> v0_ratio;  ///< V0 in units of the zero-temperature v0_crit

  std::vector<int> n_list{1, 10, 100};
  double grid_min{0.5};
  double grid_max{1.5};
  int grid_points{101};
  bool allow_separatrix{false};

  double dt_scale{1.0};
  double horizon_periods{10.0};  ///< evolve/moments horizon in units of pi / V_p
  double cap_periods{50.0};      ///< averaging cap when no period is found
  int workers{1};
  int output_stride{10};

  std::vector<double> temperatures;
  std::string gamma_mode;  ///< "constant" or "tabulated"
  std::vector<double> gamma_values;
  std::string gamma_table_path;

  std::map<std::string, std::string> entries;  ///< keys as given in the file
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// Perturbation strength after resolving `v0_ratio`.
double resolved_v0(const RunConfig& cfg);
ModelParams<double> resolved_params(const RunConfig& cfg);

/// Requires `gamma_mode` and the keys it implies.
ThermalConfig thermal_config(const RunConfig& cfg);

/// Canonical `key=value` lines of the effective configuration, sorted.
std::string describe(const RunConfig& cfg);

}  // namespace socdpt
