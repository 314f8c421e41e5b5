#pragma once

// Sweeps over the perturbation strength (and temperature) producing the
// time-averaged observables, plus the figure-data reproduction driver.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "socdpt/config.hpp"
#include "socdpt/model.hpp"
#include "socdpt/thermal.hpp"

namespace socdpt {

struct ScanOptions {
  double dt_scale{1.0};
  double cap_periods{50.0};
  int workers{1};
  bool allow_separatrix{false};
};

struct ScanRow {
  double v0_ratio{};  ///< V0 / v0_crit at zero temperature
  double temperature_nK{};
  double gamma{};  ///< depletion used for the dynamics
  int n_atoms{};
  double m_bar{};
  double min_sz{};
  double e_bar{};  ///< NaN for mixed (finite-Gamma) rows
  double e_hz_bar{};
  double t_r{};  ///< averaging window: detected period or the cap
  bool period_capped{};
  bool integration_ok{true};
};

struct ScanTable {
  std::vector<ScanRow> rows;
  bool any_failed() const;
};

/// `points` evenly spaced ratios over [lo, hi]; the separatrix ratio 1.0 is
/// dropped unless `allow_separatrix`.
std::vector<double> default_grid(double lo, double hi, int points, bool allow_separatrix);
void validate_grid(std::span<const double> grid, bool allow_separatrix);

/// One row per (ratio, N), ordered by ratio then by the order of `n_list`.
ScanTable scan_v0(const ModelParams<double>& params, std::span<const double> grid,
                  std::span<const int> n_list, const ScanOptions& opts);

/// One row per (temperature, ratio) at N = params.n_atoms, temperature-major.
/// A ratio equal to 1 - Gamma lies on that block's separatrix and is skipped
/// unless `allow_separatrix`.
ScanTable thermal_scan(const ModelParams<double>& params, const ThermalConfig& thermal,
                       std::span<const double> grid, const ScanOptions& opts);

void write_scan_csv(const ScanTable& table, const std::filesystem::path& path);

struct FigureOutput {
  std::vector<std::filesystem::path> files;  ///< CSVs then manifest.txt
  bool any_failed{};
};

/// Writes `out_dir/<fig_id>/*.csv` and `manifest.txt` for fig2, fig3, fig5 or fig6.
FigureOutput reproduce_figure(const std::string& fig_id, const RunConfig& cfg,
                              const std::filesystem::path& out_dir);

ScanOptions scan_options(const RunConfig& cfg);

}  // namespace socdpt
