#pragma once

// Finite-temperature model: a fraction Gamma of thermally excited atoms
// depletes the condensate and enters the two-mode state as a dephased
// mixture, rho = (1 - Gamma) rho_g + Gamma delta_rho.

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

#include "socdpt/entropy.hpp"
#include "socdpt/model.hpp"
#include "socdpt/moments.hpp"

namespace socdpt {

/// Excitation fraction Gamma(|alpha|^2, T). Either one constant per
/// temperature, or a rectangular table interpolated bilinearly.
class GammaModel {
 public:
  enum class Kind { Constant, Tabulated };

  static GammaModel constant(std::vector<double> temperatures, std::vector<double> gammas);
  /// values(i, j) is Gamma at alpha_sq[i], temperatures[j].
  static GammaModel tabulated(std::vector<double> alpha_sq, std::vector<double> temperatures,
                              Eigen::MatrixXd values);

  Kind kind() const { return kind_; }
  const std::vector<double>& temperatures() const { return temps_; }
  double operator()(double alpha_sq, double temperature) const;

  /// Values at or above the usual depletion bound of 0.20.
  std::vector<std::string> warnings() const;

 private:
  GammaModel() = default;
  void validate() const;

  Kind kind_{Kind::Constant};
  std::vector<double> alpha_sq_;
  std::vector<double> temps_;
  Eigen::MatrixXd values_;  // rows: alpha_sq (1 row for Constant), cols: temperature
};

/// Reads `alpha_sq, T_nK, gamma` rows (header required) on a rectangular grid.
GammaModel load_gamma_table(const std::string& path);

struct ThermalConfig {
  std::vector<double> temperatures;  ///< nK, ascending
  GammaModel gamma;
};

/// Interaction energies rescaled by the condensate fraction 1 - Gamma.
/// theta, k_m and V_p are untouched, so v0_crit scales by exactly 1 - Gamma.
template <typename Scalar>
Derived<Scalar> effective_params(const ModelParams<Scalar>& params, Scalar gamma) {
  if (!(gamma >= 0) || !(gamma < Scalar(0.5)))
    throw invalid_value("gamma", "excitation fraction must lie in [0, 0.5)");
  const Scalar keep = 1 - gamma;
  // Scale the energies rather than g_s n and g_a n: g_s - g_a is a small
  // difference and rounding it again would spoil the exact 1 - Gamma ratio.
  Derived<Scalar> d = derive(params);
  d.g1 *= keep;
  d.g2 *= keep;
  d.es *= keep;
  d.em *= keep;
  d.v0_crit *= keep;
  ModelParams<Scalar> p = params;
  p.gs_n *= keep;
  p.ga_n *= keep;
  const auto scaled = derive(p);
  d.omega_c1 = scaled.omega_c1;
  d.omega_c2 = scaled.omega_c2;
  return d;
}

/// Correlators of the mixed state. delta_rho is diagonal in |n, N-n> with
/// the binomial populations of `psi`: coherences vanish, populations and
/// diagonal fourth-order moments take their coherent values.
template <typename Scalar>
MomentState<Scalar> mixed_expectations(const MomentState<Scalar>& ground, Scalar gamma, int n_atoms,
                                       const Spinor<Scalar>& psi) {
  const Scalar x = right_fraction(psi);
  const Scalar y = 1 - x;
  const Scalar n = static_cast<Scalar>(n_atoms);
  const Scalar pairs = n * (n - 1);
  const Scalar keep = 1 - gamma;

  MomentState<Scalar> m;
  m.n_r = keep * ground.n_r + gamma * n * x;
  m.n_l = keep * ground.n_l + gamma * n * y;
  m.c = keep * ground.c;
  m.w = keep * ground.w + gamma * pairs * x * y;
  m.u = keep * ground.u;
  m.v = keep * ground.v;
  m.p = keep * ground.p;
  m.q_r = keep * ground.q_r + gamma * pairs * x * x;
  m.q_l = keep * ground.q_l + gamma * pairs * y * y;
  return m;
}

}  // namespace socdpt
