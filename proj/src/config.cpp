#include "socdpt/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "socdpt/csv.hpp"
#include "socdpt/error.hpp"

namespace socdpt {
namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "k0",          "omega",           "gs_n",          "ga_n",         "n_atoms",
      "v0",          "v0_ratio",        "n_list",        "grid_min",     "grid_max",
      "grid_points", "allow_separatrix", "dt_scale",     "horizon_periods", "cap_periods",
      "workers",     "output_stride",   "temperatures",  "gamma_mode",   "gamma_values",
      "gamma_table_path"};
  return keys;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text) {
  double value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw invalid_value(key, "not a number: '" + text + "'");
  return value;
}

int to_int(const std::string& key, const std::string& text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw invalid_value(key, "not an integer: '" + text + "'");
  return value;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw invalid_value(key, "not a boolean: '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(to_double(key, item));
  return out;
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + format_real(xs[i]);
  return out;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParameterError("invalid_line", std::to_string(lineno),
                           "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().count(key)) throw ParameterError("unknown_key", key, "unknown config key '" + key + "'");
    if (cfg.entries.count(key)) throw ParameterError("duplicate_key", key, "key '" + key + "' given twice");
    cfg.entries[key] = value;
  }

  const auto& e = cfg.entries;
  auto has = [&](const char* k) { return e.count(k) > 0; };
  auto require = [&](const char* k) -> const std::string& {
    if (!has(k)) throw ParameterError("missing_key", k, std::string("missing required key '") + k + "'");
    return e.at(k);
  };

  cfg.model.omega = to_double("omega", require("omega"));
  cfg.model.gs_n = to_double("gs_n", require("gs_n"));
  cfg.model.n_atoms = to_int("n_atoms", require("n_atoms"));
  if (has("k0")) cfg.model.k0 = to_double("k0", e.at("k0"));
  // 87Rb-like ratio of inter- to intra-component scattering
  cfg.model.ga_n = has("ga_n") ? to_double("ga_n", e.at("ga_n")) : 0.9987 * cfg.model.gs_n;
  if (has("v0") && has("v0_ratio")) throw invalid_value("v0_ratio", "give either v0 or v0_ratio, not both");
  if (has("v0")) cfg.model.v0 = to_double("v0", e.at("v0"));
  if (has("v0_ratio")) {
    cfg.v0_ratio = to_double("v0_ratio", e.at("v0_ratio"));
    if (!(*cfg.v0_ratio >= 0)) throw invalid_value("v0_ratio", "must be non-negative");
  }

  if (has("n_list")) {
    cfg.n_list.clear();
    for (const auto& item : split_list(e.at("n_list"))) cfg.n_list.push_back(to_int("n_list", item));
    if (cfg.n_list.empty()) throw invalid_value("n_list", "empty list");
    for (int n : cfg.n_list)
      if (n < 1) throw invalid_value("n_list", "atom numbers must be >= 1");
  }
  if (has("grid_min")) cfg.grid_min = to_double("grid_min", e.at("grid_min"));
  if (has("grid_max")) cfg.grid_max = to_double("grid_max", e.at("grid_max"));
  if (has("grid_points")) cfg.grid_points = to_int("grid_points", e.at("grid_points"));
  if (has("allow_separatrix")) cfg.allow_separatrix = to_bool("allow_separatrix", e.at("allow_separatrix"));
  if (has("dt_scale")) cfg.dt_scale = to_double("dt_scale", e.at("dt_scale"));
  if (has("horizon_periods")) cfg.horizon_periods = to_double("horizon_periods", e.at("horizon_periods"));
  if (has("cap_periods")) cfg.cap_periods = to_double("cap_periods", e.at("cap_periods"));
  if (has("workers")) cfg.workers = to_int("workers", e.at("workers"));
  if (has("output_stride")) cfg.output_stride = to_int("output_stride", e.at("output_stride"));
  if (has("temperatures")) cfg.temperatures = to_doubles("temperatures", e.at("temperatures"));
  if (has("gamma_mode")) cfg.gamma_mode = e.at("gamma_mode");
  if (has("gamma_values")) cfg.gamma_values = to_doubles("gamma_values", e.at("gamma_values"));
  if (has("gamma_table_path")) cfg.gamma_table_path = e.at("gamma_table_path");

  if (!(cfg.grid_min > 0) || !(cfg.grid_max <= 3) || !(cfg.grid_min < cfg.grid_max))
    throw invalid_value("grid_min", "grid must satisfy 0 < grid_min < grid_max <= 3");
  if (cfg.grid_points < 2) throw invalid_value("grid_points", "need at least 2 points");
  if (!(cfg.dt_scale > 0)) throw invalid_value("dt_scale", "must be positive");
  if (!(cfg.horizon_periods > 0)) throw invalid_value("horizon_periods", "must be positive");
  if (!(cfg.cap_periods > 0)) throw invalid_value("cap_periods", "must be positive");
  if (cfg.workers < 1) throw invalid_value("workers", "must be >= 1");
  if (cfg.output_stride < 1) throw invalid_value("output_stride", "must be >= 1");
  if (!cfg.gamma_mode.empty() && cfg.gamma_mode != "constant" && cfg.gamma_mode != "tabulated")
    throw invalid_value("gamma_mode", "expected 'constant' or 'tabulated'");

  validate(cfg.model);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("unreadable_config", path.string(), "cannot open config " + path.string());
  return parse_config(in);
}

double resolved_v0(const RunConfig& cfg) {
  if (!cfg.v0_ratio) return cfg.model.v0;
  ModelParams<double> base = cfg.model;
  base.v0 = 0;
  return *cfg.v0_ratio * derive(base).v0_crit;
}

ModelParams<double> resolved_params(const RunConfig& cfg) {
  ModelParams<double> p = cfg.model;
  p.v0 = resolved_v0(cfg);
  return p;
}

ThermalConfig thermal_config(const RunConfig& cfg) {
  if (cfg.gamma_mode.empty())
    throw ParameterError("missing_key", "gamma_mode", "thermal runs need 'gamma_mode' (constant or tabulated)");
  if (cfg.temperatures.empty())
    throw ParameterError("missing_key", "temperatures", "thermal runs need 'temperatures'");
  if (!std::is_sorted(cfg.temperatures.begin(), cfg.temperatures.end()) || cfg.temperatures.front() < 0)
    throw invalid_value("temperatures", "must be non-negative and ascending");

  if (cfg.gamma_mode == "constant") {
    if (cfg.gamma_values.empty())
      throw ParameterError("missing_key", "gamma_values", "constant gamma_mode needs 'gamma_values'");
    if (cfg.gamma_values.size() != cfg.temperatures.size())
      throw invalid_value("gamma_values", "need one value per temperature");
    return {cfg.temperatures, GammaModel::constant(cfg.temperatures, cfg.gamma_values)};
  }
  if (cfg.gamma_table_path.empty())
    throw ParameterError("missing_key", "gamma_table_path", "tabulated gamma_mode needs 'gamma_table_path'");
  return {cfg.temperatures, load_gamma_table(cfg.gamma_table_path)};
}

std::string describe(const RunConfig& cfg) {
  std::map<std::string, std::string> out;
  out["k0"] = format_real(cfg.model.k0);
  out["omega"] = format_real(cfg.model.omega);
  out["gs_n"] = format_real(cfg.model.gs_n);
  out["ga_n"] = format_real(cfg.model.ga_n);
  out["n_atoms"] = std::to_string(cfg.model.n_atoms);
  out["v0"] = format_real(resolved_v0(cfg));
  if (cfg.v0_ratio) out["v0_ratio"] = format_real(*cfg.v0_ratio);
  std::string ns;
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) ns += (i ? "," : "") + std::to_string(cfg.n_list[i]);
  out["n_list"] = ns;
  out["grid_min"] = format_real(cfg.grid_min);
  out["grid_max"] = format_real(cfg.grid_max);
  out["grid_points"] = std::to_string(cfg.grid_points);
  out["allow_separatrix"] = cfg.allow_separatrix ? "true" : "false";
  out["dt_scale"] = format_real(cfg.dt_scale);
  out["horizon_periods"] = format_real(cfg.horizon_periods);
  out["cap_periods"] = format_real(cfg.cap_periods);
  out["output_stride"] = std::to_string(cfg.output_stride);
  if (!cfg.temperatures.empty()) out["temperatures"] = join(cfg.temperatures);
  if (!cfg.gamma_mode.empty()) out["gamma_mode"] = cfg.gamma_mode;
  if (!cfg.gamma_values.empty()) out["gamma_values"] = join(cfg.gamma_values);
  if (!cfg.gamma_table_path.empty()) out["gamma_table_path"] = cfg.gamma_table_path;

  std::string text;
  for (const auto& [k, v] : out) text += k + "=" + v + "\n";
  return text;
}

}  // namespace socdpt
