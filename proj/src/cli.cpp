#include "socdpt/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "socdpt/config.hpp"
#include "socdpt/csv.hpp"
#include "socdpt/error.hpp"
#include "socdpt/fock.hpp"
#include "socdpt/meanfield.hpp"
#include "socdpt/moments.hpp"
#include "socdpt/scan.hpp"

namespace socdpt {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNumerical = 2;

struct Flags {
  std::string config;
  std::string out;
  std::optional<double> dt_scale;
  std::optional<double> horizon_periods;
  std::optional<int> workers;
  bool dry_run{false};
  bool allow_separatrix{false};
  std::string fig_id;
  int oracle_n{12};
  int oracle_samples{20};
  unsigned long long seed{12345};
};

std::filesystem::path output_dir(const Flags& f) {
  if (!f.out.empty()) return f.out;
  if (const char* env = std::getenv("SOC_DPT_OUT"); env && *env) return env;
  return "out";
}

RunConfig effective_config(const Flags& f) {
  if (f.config.empty()) throw ParameterError("missing_option", "config", "--config is required");
  RunConfig cfg = load_config(f.config);
  if (f.dt_scale) {
    if (!(*f.dt_scale > 0)) throw invalid_value("dt_scale", "must be positive");
    cfg.dt_scale = *f.dt_scale;
  }
  if (f.horizon_periods) {
    if (!(*f.horizon_periods > 0)) throw invalid_value("horizon_periods", "must be positive");
    cfg.horizon_periods = *f.horizon_periods;
  }
  if (f.workers) {
    if (*f.workers < 1) throw invalid_value("workers", "must be >= 1");
    cfg.workers = *f.workers;
  }
  if (f.allow_separatrix) cfg.allow_separatrix = true;
  return cfg;
}

void print_derived(const RunConfig& cfg) {
  const auto p = resolved_params(cfg);
  const auto d = derive(p);
  std::cout << "phase=" << to_string(classify_ground_phase(p)) << "\n"
            << "theta=" << format_real(d.theta) << "\n"
            << "k_m=" << format_real(d.km) << "\n"
            << "E_s=" << format_real(d.es) << "\n"
            << "E_m=" << format_real(d.em) << "\n"
            << "v0=" << format_real(p.v0) << "\n"
            << "v0_crit=" << format_real(d.v0_crit) << "\n"
            << "V_p=" << format_real(d.vp) << "\n"
            << "T_est=" << format_real(estimated_period(d)) << "\n"
            << "dt=" << format_real(default_dt(d, cfg.dt_scale)) << "\n";
}

int cmd_evolve(const RunConfig& cfg, const std::filesystem::path& out) {
  const auto d = derive(resolved_params(cfg));
  const double dt = default_dt(d, cfg.dt_scale);
  const double horizon = cfg.horizon_periods * estimated_period(d);
  const auto traj = evolve(magnetized_state<double>(), d, horizon, dt);
  const auto path = out / "evolve" / "trajectory.csv";
  write_trajectory_csv(traj, d, path, cfg.output_stride);
  std::cout << "wrote " << path.string() << "\n";
  if (traj.period) std::cout << "period=" << format_real(*traj.period) << "\n";
  else std::cout << "period=none\n";
  std::cout << "max_norm_drift=" << format_real(traj.max_norm_drift) << "\n";
  if (traj.integration_failed()) {
    std::cerr << "norm drift above limit status=integration_failed\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_moments(const RunConfig& cfg, const std::filesystem::path& out) {
  const auto d = derive(resolved_params(cfg));
  const double dt = default_dt(d, cfg.dt_scale);
  const double horizon = cfg.horizon_periods * estimated_period(d);
  bool failed = false;
  for (int n : cfg.n_list) {
    const auto mt = evolve_moments(init_moments(magnetized_state<double>(), n), d, horizon, dt);
    const auto path = out / "moments" / ("moments_N" + std::to_string(n) + ".csv");
    write_moments_csv(mt, path, cfg.output_stride);
    std::cout << "wrote " << path.string() << "\n";
    failed = failed || mt.integration_failed();
  }
  if (failed) {
    std::cerr << "conservation drift above limit status=integration_failed\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int report_table(const ScanTable& table, const std::filesystem::path& path) {
  write_scan_csv(table, path);
  std::cout << "wrote " << path.string() << "\n";
  if (table.any_failed()) {
    std::cerr << "some rows failed to integrate status=integration_failed\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_scan(const RunConfig& cfg, const std::filesystem::path& out) {
  const auto grid = default_grid(cfg.grid_min, cfg.grid_max, cfg.grid_points, cfg.allow_separatrix);
  return report_table(scan_v0(cfg.model, grid, cfg.n_list, scan_options(cfg)), out / "scan" / "scan.csv");
}

int cmd_thermal_scan(const RunConfig& cfg, const std::filesystem::path& out) {
  const auto thermal = thermal_config(cfg);
  for (const auto& w : thermal.gamma.warnings()) std::cerr << "warning: " << w << "\n";
  const auto grid = default_grid(cfg.grid_min, cfg.grid_max, cfg.grid_points, cfg.allow_separatrix);
  return report_table(thermal_scan(cfg.model, thermal, grid, scan_options(cfg)),
                      out / "thermal-scan" / "thermal_scan.csv");
}

int cmd_reproduce(const RunConfig& cfg, const std::string& fig_id, const std::filesystem::path& out) {
  const auto result = reproduce_figure(fig_id, cfg, out);
  for (const auto& f : result.files) std::cout << "wrote " << f.string() << "\n";
  if (result.any_failed) {
    std::cerr << "some rows failed to integrate status=integration_failed\n";
    return kExitNumerical;
  }
  return kExitOk;
}

#ifdef SOCDPT_WITH_ORACLE
int cmd_oracle_check(const Flags& f) {
  if (f.oracle_n < 1 || f.oracle_n > kMaxFockAtoms) throw invalid_value("n", "must be in [1, 4096]");
  if (f.oracle_samples < 1) throw invalid_value("samples", "must be >= 1");
  constexpr double kLimit = 1e-10;
  const char* names[] = {"n_r", "n_l", "c", "w", "u", "v", "p", "q_r", "q_l", "e_vn", "e_hz"};
  double worst[11] = {};

  std::mt19937_64 rng(f.seed);
  std::normal_distribution<double> gauss;
  for (int s = 0; s < f.oracle_samples; ++s) {
    Spinor<double> psi;
    psi << std::complex<double>(gauss(rng), gauss(rng)), std::complex<double>(gauss(rng), gauss(rng));
    psi.normalize();
    const auto fock = build_state(psi, f.oracle_n);
    const auto a = init_moments(psi, f.oracle_n);
    const auto b = oracle_moments(fock);
    const double diff[11] = {std::abs(a.n_r - b.n_r),
                             std::abs(a.n_l - b.n_l),
                             std::abs(a.c - b.c),
                             std::abs(a.w - b.w),
                             std::abs(a.u - b.u),
                             std::abs(a.v - b.v),
                             std::abs(a.p - b.p),
                             std::abs(a.q_r - b.q_r),
                             std::abs(a.q_l - b.q_l),
                             std::abs(von_neumann_entropy(psi, f.oracle_n).e_vn - entropy_from_fock(fock).e_vn),
                             std::abs(hz_parameter(a, f.oracle_n).e_hz - hz_from_fock(fock).e_hz)};
    for (int k = 0; k < 11; ++k) worst[k] = std::max(worst[k], diff[k]);
  }
  double overall = 0;
  for (int k = 0; k < 11; ++k) {
    std::cout << "max_abs_discrepancy " << names[k] << "=" << format_real(worst[k]) << "\n";
    overall = std::max(overall, worst[k]);
  }
  std::cout << "max_abs_discrepancy all=" << format_real(overall) << " N=" << f.oracle_n
            << " samples=" << f.oracle_samples << "\n";
  if (!(overall <= kLimit)) {
    std::cerr << "oracle discrepancy above " << kLimit << " status=oracle_mismatch\n";
    return kExitNumerical;
  }
  return kExitOk;
}
#endif

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Dynamical phase transition of a spin-orbit-coupled two-mode condensate", "soc_dpt"};
  app.set_version_flag("--version", std::string(SOCDPT_VERSION));
  app.require_subcommand(1, 1);
  app.fallthrough();

  Flags f;
  app.add_option("--config", f.config, "key = value configuration file");
  app.add_option("--out", f.out, "output directory (default: $SOC_DPT_OUT, then ./out)");
  app.add_option("--dt-scale", f.dt_scale, "multiplies the default step T_est / 2e4");
  app.add_option("--horizon-periods", f.horizon_periods, "evolve/moments horizon in units of pi / V_p");
  app.add_option("--workers", f.workers, "scan worker threads");
  app.add_flag("--dry-run", f.dry_run, "validate the config and print derived constants only");
  app.add_flag("--allow-separatrix", f.allow_separatrix, "keep the ratio 1.0 in scan grids");

  auto* evolve_cmd = app.add_subcommand("evolve", "mean-field trajectory from the magnetized state");
  auto* moments_cmd = app.add_subcommand("moments", "fourth-order moment dynamics for each N in n_list");
  auto* scan_cmd = app.add_subcommand("scan", "time-averaged observables over the V0 grid");
  auto* thermal_cmd = app.add_subcommand("thermal-scan", "finite-temperature scan over (T, V0)");
  auto* reproduce_cmd = app.add_subcommand("reproduce", "figure data: fig2, fig3, fig5 or fig6");
  reproduce_cmd->add_option("fig_id", f.fig_id, "figure id")->required();
  auto* oracle_cmd = app.add_subcommand("oracle-check", "compare closed-form moments with the Fock oracle");
  oracle_cmd->add_option("--n", f.oracle_n, "atom number");
  oracle_cmd->add_option("--samples", f.oracle_samples, "random states to draw");
  oracle_cmd->add_option("--seed", f.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << " error=usage\n";
    return kExitInvalid;
  }

  try {
    if (oracle_cmd->parsed()) {
#ifdef SOCDPT_WITH_ORACLE
      return cmd_oracle_check(f);
#else
      throw ParameterError("disabled_feature", "oracle", "built without SOCDPT_WITH_ORACLE");
#endif
    }

    const RunConfig cfg = effective_config(f);
    if (f.dry_run) {
      print_derived(cfg);
      if (thermal_cmd->parsed()) thermal_config(cfg);
      if (reproduce_cmd->parsed() && f.fig_id == "fig6") thermal_config(cfg);
      return kExitOk;
    }
    const auto out = output_dir(f);
    if (evolve_cmd->parsed()) return cmd_evolve(cfg, out);
    if (moments_cmd->parsed()) return cmd_moments(cfg, out);
    if (scan_cmd->parsed()) return cmd_scan(cfg, out);
    if (thermal_cmd->parsed()) return cmd_thermal_scan(cfg, out);
    return cmd_reproduce(cfg, f.fig_id, out);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << " " << e.trailer() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << " error=invalid_argument\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << " error=runtime\n";
    return kExitNumerical;
  }
}

}  // namespace socdpt
