#include "socdpt/scan.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "socdpt/csv.hpp"
#include "socdpt/entropy.hpp"
#include "socdpt/error.hpp"
#include "socdpt/meanfield.hpp"
#include "socdpt/moments.hpp"

namespace socdpt {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kFirstHorizonPeriods = 4.0;

// Runs task(i) for i in [0, count) on `workers` threads. Results are written
// by index, so completion order does not matter. The first exception thrown
// by a task is rethrown after all threads have joined.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task) {
  const auto threads = static_cast<std::size_t>(std::clamp(workers, 1, 256));
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_lock;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(threads, count); ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          const std::lock_guard lock(error_lock);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double zero_temperature_v0_crit(const ModelParams<double>& params) {
  ModelParams<double> base = params;
  base.v0 = 0;
  return derive(base).v0_crit;
}

// V0 / v0_crit(Gamma) == 1 up to rounding: the depleted system's separatrix.
bool separatrix_ratio(double ratio, double gamma) { return std::abs(ratio / (1 - gamma) - 1) < 1e-9; }

struct PointSpec {
  double ratio{};
  double temperature{};
  double dynamics_gamma{};
  const GammaModel* mixing{};  // null: pure state
};

std::vector<ScanRow> evaluate_point(const ModelParams<double>& base, double v0_crit0, const PointSpec& spec,
                                    std::span<const int> n_list, const ScanOptions& opts) {
  std::vector<ScanRow> rows;
  for (int n : n_list) {
    ScanRow r;
    r.v0_ratio = spec.ratio;
    r.temperature_nK = spec.temperature;
    r.gamma = spec.dynamics_gamma;
    r.n_atoms = n;
    rows.push_back(r);
  }
  try {
    ModelParams<double> p = base;
    p.v0 = spec.ratio * v0_crit0;
    const Derived<double> d = effective_params(p, spec.dynamics_gamma);
    const double t_est = estimated_period(d);
    const double dt = default_dt(d, opts.dt_scale);
    const double cap = opts.cap_periods * t_est;
    const auto psi0 = magnetized_state<double>();
    const auto traj = evolve_until_period(psi0, d, dt, std::min(kFirstHorizonPeriods * t_est, cap), cap);
    const double window = averaging_window(traj, cap);
    const double m_bar = order_parameter(traj, window);
    const double lowest = min_sz(traj, window);

    for (auto& r : rows) {
      r.m_bar = m_bar;
      r.min_sz = lowest;
      r.t_r = window;
      r.period_capped = !traj.period.has_value();
      r.e_bar = spec.mixing && spec.temperature > 0 ? kNaN : time_averaged_entropy(traj, r.n_atoms, window);

      const auto mt = evolve_moments(init_moments(psi0, r.n_atoms), d, window, dt);
      if (spec.mixing) {
        std::vector<double> e(mt.states.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
          const auto& psi = traj.states[i];
          const double g = (*spec.mixing)(right_fraction(psi), spec.temperature);
          e[i] = hz_parameter(mixed_expectations(mt.states[i], g, r.n_atoms, psi), r.n_atoms).e_hz;
        }
        r.e_hz_bar = window_average(std::span<const double>(e), dt, window);
      } else {
        r.e_hz_bar = time_averaged_hz(mt, window);
      }
      r.integration_ok = !traj.integration_failed() && !mt.integration_failed();
    }
  } catch (const std::exception&) {
    for (auto& r : rows) {
      r.m_bar = r.min_sz = r.e_bar = r.e_hz_bar = r.t_r = kNaN;
      r.integration_ok = false;
    }
  }
  return rows;
}

std::string grid_text(std::span<const double> grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) out += (i ? "," : "") + format_real(grid[i]);
  return out;
}

std::string ratio_tag(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "r%.3f", ratio);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

// Time series behind the trajectory panels: s_z, E(t) and E_HZ(t) per N
// over two averaging windows.
bool write_figure_trajectory(const ModelParams<double>& base, double v0_crit0, double ratio,
                             std::span<const int> n_list, const RunConfig& cfg,
                             const std::filesystem::path& path) {
  ModelParams<double> p = base;
  p.v0 = ratio * v0_crit0;
  const Derived<double> d = derive(p);
  const double t_est = estimated_period(d);
  const double dt = default_dt(d, cfg.dt_scale);
  const double cap = cfg.cap_periods * t_est;
  const auto psi0 = magnetized_state<double>();
  auto traj = evolve_until_period(psi0, d, dt, std::min(kFirstHorizonPeriods * t_est, cap), cap);
  const double span_end = 2 * averaging_window(traj, cap);
  extend(traj, d, span_end);
  const std::size_t count = detail::steps_to(span_end, dt) + 1;

  bool failed = traj.integration_failed();
  std::vector<std::vector<double>> entropy, hz;
  for (int n : n_list) {
    entropy.push_back(entropy_series(traj, n, span_end));
    const auto mt = evolve_moments(init_moments(psi0, n), d, span_end, dt);
    failed = failed || mt.integration_failed();
    hz.push_back(hz_series(mt));
  }

  std::vector<std::string> header{"t", "sz"};
  for (int n : n_list) header.push_back("e_N" + std::to_string(n));
  for (int n : n_list) header.push_back("e_hz_N" + std::to_string(n));
  CsvFile csv(path);
  csv.row(header);
  const auto stride = std::max<std::size_t>(static_cast<std::size_t>(cfg.output_stride), count / 4000);
  for (std::size_t i = 0; i < count; i += stride) {
    const auto& psi = traj.states[i];
    std::vector<std::string> row{format_real(traj.times[i]), format_real(std::norm(psi(0)) - std::norm(psi(1)))};
    for (const auto& e : entropy) row.push_back(format_real(e[i]));
    for (const auto& e : hz) row.push_back(format_real(e[i]));
    csv.row(row);
  }
  csv.close();
  return failed;
}

}  // namespace

bool ScanTable::any_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const ScanRow& r) { return !r.integration_ok; });
}

std::vector<double> default_grid(double lo, double hi, int points, bool allow_separatrix) {
  if (points < 2 || !(lo < hi)) throw invalid_value("grid_points", "need at least two points over lo < hi");
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) {
    // exact decimal values for round spacings (0.5 + i * 0.01 style grids)
    const double x = (lo * (points - 1 - i) + hi * i) / (points - 1);
    const double rounded = std::round(x * 1e9) / 1e9;
    if (rounded == 1.0 && !allow_separatrix) continue;
    grid.push_back(rounded);
  }
  return grid;
}

void validate_grid(std::span<const double> grid, bool allow_separatrix) {
  if (grid.empty()) throw invalid_value("grid_points", "empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0) || !(grid[i] <= 3)) throw invalid_value("grid_min", "ratios must lie in (0, 3]");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw invalid_value("grid_min", "ratios must be ascending");
    if (grid[i] == 1.0 && !allow_separatrix)
      throw invalid_value("allow_separatrix", "grid contains the separatrix ratio 1.0");
  }
}

ScanTable scan_v0(const ModelParams<double>& params, std::span<const double> grid, std::span<const int> n_list,
                  const ScanOptions& opts) {
  validate_grid(grid, opts.allow_separatrix);
  if (n_list.empty()) throw invalid_value("n_list", "empty list");
  const double v0_crit0 = zero_temperature_v0_crit(params);
  std::vector<std::vector<ScanRow>> parts(grid.size());
  parallel_for(grid.size(), opts.workers, [&](std::size_t i) {
    parts[i] = evaluate_point(params, v0_crit0, PointSpec{grid[i], 0.0, 0.0, nullptr}, n_list, opts);
  });
  ScanTable table;
  for (auto& part : parts) table.rows.insert(table.rows.end(), part.begin(), part.end());
  return table;
}

ScanTable thermal_scan(const ModelParams<double>& params, const ThermalConfig& thermal,
                       std::span<const double> grid, const ScanOptions& opts) {
  validate_grid(grid, opts.allow_separatrix);
  const double v0_crit0 = zero_temperature_v0_crit(params);
  const std::array<int, 1> n_list{params.n_atoms};
  const std::size_t per_t = grid.size();
  const std::size_t total = per_t * thermal.temperatures.size();
  std::vector<std::vector<ScanRow>> parts(total);
  parallel_for(total, opts.workers, [&](std::size_t k) {
    const double temperature = thermal.temperatures[k / per_t];
    // depletion of the run is fixed by the initial magnetized state
    const double dyn_gamma = thermal.gamma(1.0, temperature);
    if (!opts.allow_separatrix && separatrix_ratio(grid[k % per_t], dyn_gamma)) return;
    parts[k] = evaluate_point(params, v0_crit0, PointSpec{grid[k % per_t], temperature, dyn_gamma, &thermal.gamma},
                              n_list, opts);
  });
  ScanTable table;
  for (auto& part : parts) table.rows.insert(table.rows.end(), part.begin(), part.end());
  return table;
}

void write_scan_csv(const ScanTable& table, const std::filesystem::path& path) {
  CsvFile csv(path);
  csv.row({"v0_ratio", "temperature_nK", "gamma", "n_atoms", "m_bar", "min_sz", "e_bar", "e_hz_bar", "t_r",
           "period_capped", "integration_ok"});
  for (const auto& r : table.rows)
    csv.row({format_real(r.v0_ratio), format_real(r.temperature_nK), format_real(r.gamma),
             std::to_string(r.n_atoms), format_real(r.m_bar), format_real(r.min_sz), format_real(r.e_bar),
             format_real(r.e_hz_bar), format_real(r.t_r), r.period_capped ? "true" : "false",
             r.integration_ok ? "true" : "false"});
  csv.close();
}

ScanOptions scan_options(const RunConfig& cfg) {
  return {cfg.dt_scale, cfg.cap_periods, cfg.workers, cfg.allow_separatrix};
}

FigureOutput reproduce_figure(const std::string& fig_id, const RunConfig& cfg, const std::filesystem::path& out_dir) {
  if (fig_id != "fig2" && fig_id != "fig3" && fig_id != "fig5" && fig_id != "fig6")
    throw invalid_value("fig_id", "expected one of fig2, fig3, fig5, fig6");

  const ModelParams<double> params = cfg.model;
  const auto opts = scan_options(cfg);
  const auto dir = out_dir / fig_id;
  FigureOutput out;
  std::string extra;

  if (fig_id == "fig2") {
    const std::array<double, 4> ratios{0.6, 0.999, 1.001, 1.4};
    const double v0_crit0 = zero_temperature_v0_crit(params);
    std::array<bool, 4> failed{};
    std::filesystem::create_directories(dir);
    parallel_for(ratios.size(), opts.workers, [&](std::size_t i) {
      failed[i] = write_figure_trajectory(params, v0_crit0, ratios[i], cfg.n_list, cfg,
                                          dir / ("trajectory_" + ratio_tag(ratios[i]) + ".csv"));
    });
    for (double r : ratios) out.files.push_back(dir / ("trajectory_" + ratio_tag(r) + ".csv"));
    out.any_failed = std::any_of(failed.begin(), failed.end(), [](bool f) { return f; });
    extra += "ratios=" + grid_text(ratios) + "\n";
    extra += "window=two averaging windows (detected period, or cap when none)\n";
  } else if (fig_id == "fig3" || fig_id == "fig5") {
    const auto grid = default_grid(cfg.grid_min, cfg.grid_max, cfg.grid_points, cfg.allow_separatrix);
    const auto table = scan_v0(params, grid, cfg.n_list, opts);
    write_scan_csv(table, dir / "scan.csv");
    out.files.push_back(dir / "scan.csv");
    out.any_failed = table.any_failed();
    extra += "grid=" + grid_text(grid) + "\n";
  } else {
    const auto thermal = thermal_config(cfg);
    const auto grid = default_grid(cfg.grid_min, cfg.grid_max, cfg.grid_points, cfg.allow_separatrix);
    const auto table = thermal_scan(params, thermal, grid, opts);
    write_scan_csv(table, dir / "thermal_scan.csv");
    out.files.push_back(dir / "thermal_scan.csv");
    out.any_failed = table.any_failed();
    extra += "grid=" + grid_text(grid) + "\n";
    extra += std::string("gamma_dynamics=") +
             (thermal.gamma.kind() == GammaModel::Kind::Constant ? "constant per temperature"
                                                                 : "table value at alpha_sq=1 (initial state)") +
             "\n";
    extra += std::string("gamma_mixing=") +
             (thermal.gamma.kind() == GammaModel::Kind::Constant ? "constant per temperature"
                                                                 : "table value at alpha_sq(t)") +
             "\n";
  }

  std::string manifest = "fig_id=" + fig_id + "\n";
  manifest += std::string("code_version=") + SOCDPT_VERSION + "\n";
  manifest += describe(cfg);
  manifest += extra;
  manifest += "dt=dt_scale*pi/(2e4*V_p)\n";
  std::string files;
  for (std::size_t i = 0; i < out.files.size(); ++i) files += (i ? "," : "") + out.files[i].filename().string();
  manifest += "files=" + files + "\n";
  write_text(dir / "manifest.txt", manifest);
  out.files.push_back(dir / "manifest.txt");
  return out;
}

}  // namespace socdpt
