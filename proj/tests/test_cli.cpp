#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "socdpt/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "soc_dpt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  auto* old_out = std::cout.rdbuf(out.rdbuf());
  auto* old_err = std::cerr.rdbuf(err.rdbuf());
  const int code = socdpt::run(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  return {code, out.str(), err.str()};
}

fs::path workspace() {
  const auto dir = fs::temp_directory_path() / "socdpt_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "base.cfg") << "omega = 0.3\ngs_n = 1.0\nn_atoms = 100\nv0_ratio = 0.6\nn_list = 1, 10\n";
  std::ofstream(dir / "no_gs.cfg") << "omega = 0.3\nn_atoms = 100\n";
  return dir;
}

}  // namespace

TEST_CASE("evolve writes a trajectory") {
  const auto dir = workspace();
  const auto r = invoke({"evolve", "--config", (dir / "base.cfg").string(), "--out", (dir / "out").string(),
                         "--horizon-periods", "2"});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "out" / "evolve" / "trajectory.csv"));
  CHECK(r.out.find("period=") != std::string::npos);
}

TEST_CASE("moments writes one file per N") {
  const auto dir = workspace();
  const auto r = invoke({"moments", "--config", (dir / "base.cfg").string(), "--out", (dir / "out").string(),
                         "--horizon-periods", "1"});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "out" / "moments" / "moments_N1.csv"));
  CHECK(fs::exists(dir / "out" / "moments" / "moments_N10.csv"));
}

TEST_CASE("validation errors exit 1 with a key=value trailer") {
  const auto dir = workspace();
  auto r = invoke({"evolve", "--config", (dir / "no_gs.cfg").string(), "--out", (dir / "out").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("missing_key=gs_n") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "out"));

  r = invoke({"evolve", "--config", (dir / "missing.cfg").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("unreadable_config=") != std::string::npos);

  r = invoke({"evolve"});
  CHECK(r.code == 1);
  CHECK(r.err.find("missing_option=config") != std::string::npos);

  r = invoke({"evolve", "--config", (dir / "base.cfg").string(), "--dt-scale", "-1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("invalid_key=dt_scale") != std::string::npos);

  r = invoke({"thermal-scan", "--config", (dir / "base.cfg").string(), "--out", (dir / "out").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("missing_key=gamma_mode") != std::string::npos);

  r = invoke({"reproduce", "fig9", "--config", (dir / "base.cfg").string(), "--out", (dir / "out").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("invalid_key=fig_id") != std::string::npos);
}

TEST_CASE("exactly one subcommand") {
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"evolve", "scan"}).code == 1);
  const auto r = invoke({"frobnicate"});
  CHECK(r.code == 1);
  CHECK(r.err.find("error=usage") != std::string::npos);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("dry run prints derived constants and writes nothing") {
  const auto dir = workspace();
  const auto r = invoke({"scan", "--dry-run", "--config", (dir / "base.cfg").string(), "--out", (dir / "out").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("theta=7.528413638834e-02") != std::string::npos);
  CHECK(r.out.find("v0_crit=7.071541666667e-02") != std::string::npos);
  CHECK(r.out.find("T_est=") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "out"));
  CHECK(r.out == invoke({"scan", "--dry-run", "--config", (dir / "base.cfg").string()}).out);
}

TEST_CASE("flags override the config file") {
  const auto dir = workspace();
  const auto base = invoke({"evolve", "--dry-run", "--config", (dir / "base.cfg").string()});
  const auto fine = invoke({"evolve", "--dry-run", "--config", (dir / "base.cfg").string(), "--dt-scale", "0.5"});
  const auto dt = [](const std::string& out) {
    const auto at = out.find("dt=");
    return std::stod(out.substr(at + 3));
  };
  CHECK(dt(fine.out) == doctest::Approx(dt(base.out) / 2));
}

TEST_CASE("output directory falls back to SOC_DPT_OUT") {
  const auto dir = workspace();
  ::setenv("SOC_DPT_OUT", (dir / "env_out").string().c_str(), 1);
  const auto r = invoke({"evolve", "--config", (dir / "base.cfg").string(), "--horizon-periods", "1"});
  ::unsetenv("SOC_DPT_OUT");
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "env_out" / "evolve" / "trajectory.csv"));
}

TEST_CASE("scan and reproduce") {
  const auto dir = workspace();
  std::ofstream(dir / "small.cfg") << "omega = 0.3\ngs_n = 1.0\nn_atoms = 10\nn_list = 10\ngrid_points = 5\n"
                                      "gamma_mode = constant\ntemperatures = 0, 30\ngamma_values = 0, 0.1\n";
  const auto cfg = (dir / "small.cfg").string();
  const auto out = (dir / "out").string();
  CHECK(invoke({"scan", "--config", cfg, "--out", out, "--workers", "2"}).code == 0);
  CHECK(fs::exists(dir / "out" / "scan" / "scan.csv"));
  CHECK(invoke({"thermal-scan", "--config", cfg, "--out", out}).code == 0);
  CHECK(fs::exists(dir / "out" / "thermal-scan" / "thermal_scan.csv"));
  CHECK(invoke({"reproduce", "fig5", "--config", cfg, "--out", out}).code == 0);
  CHECK(fs::exists(dir / "out" / "fig5" / "manifest.txt"));
}

TEST_CASE("numerical failure exits 2") {
  const auto dir = workspace();
  const auto r = invoke({"evolve", "--config", (dir / "base.cfg").string(), "--out", (dir / "out").string(),
                         "--dt-scale", "2000", "--horizon-periods", "20"});
  CHECK(r.code == 2);
  CHECK(r.err.find("status=integration_failed") != std::string::npos);
}

#ifdef SOCDPT_WITH_ORACLE
TEST_CASE("oracle check") {
  const auto r = invoke({"oracle-check", "--n", "12", "--samples", "20"});
  CHECK(r.code == 0);
  CHECK(r.out.find("max_abs_discrepancy all=") != std::string::npos);
  CHECK(r.out.find("max_abs_discrepancy u=") != std::string::npos);
  CHECK(invoke({"oracle-check", "--n", "0"}).code == 1);
}
#endif
