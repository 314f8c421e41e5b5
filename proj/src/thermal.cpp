#include "socdpt/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "socdpt/csv.hpp"
#include "socdpt/error.hpp"

namespace socdpt {
namespace {

constexpr double kDepletionBound = 0.20;

// Index i with grid[i] <= x <= grid[i+1] and the fractional position.
std::pair<std::size_t, double> bracket(const std::vector<double>& grid, double x) {
  if (grid.size() == 1) return {0, 0.0};
  const auto hi = std::upper_bound(grid.begin(), grid.end(), x);
  std::size_t i = hi == grid.begin() ? 0 : static_cast<std::size_t>(hi - grid.begin()) - 1;
  i = std::min(i, grid.size() - 2);
  return {i, (x - grid[i]) / (grid[i + 1] - grid[i])};
}

}  // namespace

GammaModel GammaModel::constant(std::vector<double> temperatures, std::vector<double> gammas) {
  if (temperatures.size() != gammas.size() || temperatures.empty())
    throw invalid_value("gamma_values", "need one value per temperature");
  GammaModel g;
  g.kind_ = Kind::Constant;
  g.temps_ = std::move(temperatures);
  g.values_ = Eigen::Map<const Eigen::RowVectorXd>(gammas.data(), static_cast<Eigen::Index>(gammas.size()));
  g.validate();
  return g;
}

GammaModel GammaModel::tabulated(std::vector<double> alpha_sq, std::vector<double> temperatures,
                                 Eigen::MatrixXd values) {
  if (values.rows() != static_cast<Eigen::Index>(alpha_sq.size()) ||
      values.cols() != static_cast<Eigen::Index>(temperatures.size()) || alpha_sq.empty() ||
      temperatures.empty())
    throw invalid_value("gamma_table_path", "table is not a rectangular alpha_sq x T grid");
  GammaModel g;
  g.kind_ = Kind::Tabulated;
  g.alpha_sq_ = std::move(alpha_sq);
  g.temps_ = std::move(temperatures);
  g.values_ = std::move(values);
  g.validate();
  return g;
}

void GammaModel::validate() const {
  const char* key = kind_ == Kind::Constant ? "gamma_values" : "gamma_table_path";
  if (!std::is_sorted(temps_.begin(), temps_.end()) ||
      std::adjacent_find(temps_.begin(), temps_.end()) != temps_.end() || temps_.front() < 0)
    throw invalid_value(key, "temperatures must be non-negative and strictly ascending");
  if (!std::is_sorted(alpha_sq_.begin(), alpha_sq_.end()) ||
      std::adjacent_find(alpha_sq_.begin(), alpha_sq_.end()) != alpha_sq_.end())
    throw invalid_value(key, "alpha_sq grid must be strictly ascending");
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    const double g = values_.data()[i];
    if (!(g >= 0) || !(g < 0.5)) throw invalid_value(key, "gamma must lie in [0, 0.5)");
  }
  for (std::size_t j = 0; j < temps_.size(); ++j)
    if (temps_[j] == 0 && values_.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff() != 0)
      throw invalid_value(key, "gamma must vanish at T = 0");
}

double GammaModel::operator()(double alpha_sq, double temperature) const {
  if (kind_ == Kind::Constant) {
    const auto it = std::find(temps_.begin(), temps_.end(), temperature);
    if (it == temps_.end()) throw invalid_value("temperatures", "no gamma configured for this temperature");
    return values_(0, it - temps_.begin());
  }
  if (temperature < temps_.front() || temperature > temps_.back())
    throw invalid_value("temperatures", "temperature outside the gamma table");
  const double a = std::clamp(alpha_sq, alpha_sq_.front(), alpha_sq_.back());
  const auto [i, fa] = bracket(alpha_sq_, a);
  const auto [j, ft] = bracket(temps_, temperature);
  const auto ri = static_cast<Eigen::Index>(i);
  const auto cj = static_cast<Eigen::Index>(j);
  if (alpha_sq_.size() == 1 && temps_.size() == 1) return values_(0, 0);
  if (alpha_sq_.size() == 1) return (1 - ft) * values_(0, cj) + ft * values_(0, cj + 1);
  if (temps_.size() == 1) return (1 - fa) * values_(ri, 0) + fa * values_(ri + 1, 0);
  return (1 - fa) * (1 - ft) * values_(ri, cj) + fa * (1 - ft) * values_(ri + 1, cj) +
         (1 - fa) * ft * values_(ri, cj + 1) + fa * ft * values_(ri + 1, cj + 1);
}

std::vector<std::string> GammaModel::warnings() const {
  std::vector<std::string> out;
  if (values_.size() > 0 && values_.maxCoeff() >= kDepletionBound)
    out.push_back("gamma reaches " + format_real(values_.maxCoeff()) +
                  ", at or above the usual depletion bound 0.20 gamma_max=" + format_real(values_.maxCoeff()));
  return out;
}

GammaModel load_gamma_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("unreadable_file", "gamma_table_path", "cannot open gamma table " + path);
  std::string line;
  if (!std::getline(in, line)) throw invalid_value("gamma_table_path", "empty gamma table " + path);

  std::map<std::pair<double, double>, double> cells;
  std::set<double> alphas, temps;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string a, t, g;
    if (!std::getline(ss, a, ',') || !std::getline(ss, t, ',') || !std::getline(ss, g))
      throw invalid_value("gamma_table_path", path + ":" + std::to_string(lineno) + ": expected 3 columns");
    double av = 0, tv = 0, gv = 0;
    try {
      av = std::stod(a);
      tv = std::stod(t);
      gv = std::stod(g);
    } catch (const std::exception&) {
      throw invalid_value("gamma_table_path", path + ":" + std::to_string(lineno) + ": not numeric");
    }
    if (!cells.emplace(std::pair{av, tv}, gv).second)
      throw invalid_value("gamma_table_path", path + ":" + std::to_string(lineno) + ": duplicate grid point");
    alphas.insert(av);
    temps.insert(tv);
  }
  std::vector<double> av(alphas.begin(), alphas.end()), tv(temps.begin(), temps.end());
  if (cells.size() != av.size() * tv.size())
    throw invalid_value("gamma_table_path", path + ": grid is not rectangular");
  Eigen::MatrixXd values(static_cast<Eigen::Index>(av.size()), static_cast<Eigen::Index>(tv.size()));
  for (std::size_t i = 0; i < av.size(); ++i)
    for (std::size_t j = 0; j < tv.size(); ++j)
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cells.at({av[i], tv[j]});
  return GammaModel::tabulated(std::move(av), std::move(tv), std::move(values));
}

}  // namespace socdpt
