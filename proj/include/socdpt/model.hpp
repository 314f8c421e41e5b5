#pragma once

// Physical parameters of the Raman-dressed two-component condensate and the
// constants derived from them. Energies are in units of k0^2, momenta in k0
// and times in k0^-2 (hbar = m = 1).

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "socdpt/error.hpp"

namespace socdpt {

template <typename Scalar>
struct ModelParams {
  Scalar k0{1};
  Scalar omega{0};  ///< Raman coupling
  Scalar gs_n{0};   ///< intra-component interaction energy g_s n
  Scalar ga_n{0};   ///< inter-component interaction energy g_a n
  int n_atoms{1};
  Scalar v0{0};     ///< lattice perturbation strength
};

template <typename Scalar>
struct Derived {
  Scalar km{};         ///< condensate momentum
  Scalar theta{};      ///< spinor mixing angle
  Scalar sin2theta{};  ///< Omega / (2 k0^2), kept exactly
  Scalar g1{};         ///< n (g_s + g_a) / 4
  Scalar g2{};         ///< n (g_s - g_a) / 4
  Scalar es{};         ///< stripe interaction energy
  Scalar em{};         ///< magnetized interaction energy
  Scalar vp{};         ///< perturbation-induced mode coupling
  Scalar v0_crit{};    ///< critical perturbation strength
  Scalar omega_c1{};
  Scalar omega_c2{};
};

enum class GroundPhase { Stripe, Magnetized, Normal };

inline const char* to_string(GroundPhase p) {
  switch (p) {
    case GroundPhase::Stripe: return "stripe";
    case GroundPhase::Magnetized: return "magnetized";
    case GroundPhase::Normal: return "normal";
  }
  return "?";
}

template <typename Scalar>
void validate(const ModelParams<Scalar>& p) {
  using std::isfinite;
  auto finite = [](const char* key, Scalar v) {
    if (!isfinite(v)) throw invalid_value(key, "must be finite");
  };
  finite("k0", p.k0);
  finite("omega", p.omega);
  finite("gs_n", p.gs_n);
  finite("ga_n", p.ga_n);
  finite("v0", p.v0);
  if (!(p.k0 > 0)) throw invalid_value("k0", "must be positive");
  if (p.omega < 0) throw invalid_value("omega", "must be non-negative");
  if (!(p.omega < 2 * p.k0 * p.k0))
    throw invalid_value("omega", "must be below 2 k0^2 (no double minimum otherwise)");
  if (p.gs_n < 0) throw invalid_value("gs_n", "must be non-negative");
  if (p.ga_n < 0) throw invalid_value("ga_n", "must be non-negative");
  if (!(p.gs_n > p.ga_n)) throw invalid_value("ga_n", "must be smaller than gs_n (G2 > 0)");
  if (p.n_atoms < 1) throw invalid_value("n_atoms", "must be at least 1");
  if (p.v0 < 0) throw invalid_value("v0", "must be non-negative");
}

template <typename Scalar>
Derived<Scalar> derive(const ModelParams<Scalar>& p) {
  using std::atan2;
  using std::sqrt;
  validate(p);

  const Scalar k02 = p.k0 * p.k0;
  const Scalar s = p.omega / (2 * k02);  // sin 2theta
  const Scalar c2 = 1 - s * s;           // cos^2 2theta

  Derived<Scalar> d;
  d.km = p.k0 * sqrt(c2);
  d.theta = atan2(p.omega, 2 * p.k0 * d.km) / 2;
  d.sin2theta = s;
  d.g1 = (p.gs_n + p.ga_n) / 4;
  d.g2 = (p.gs_n - p.ga_n) / 4;
  // cos^2(theta) sin^2(theta) = sin^2(2 theta) / 4
  d.es = d.g1 * s * s / 2;
  d.em = d.g2 * c2;
  d.vp = p.v0 * s / 4;
  d.v0_crit = s > 0 ? 2 * (d.es - d.em) / s : std::numeric_limits<Scalar>::infinity();
  d.omega_c1 = 2 * (k02 - 2 * d.g2);
  d.omega_c2 = 2 * sqrt((k02 + d.g1) * (k02 - 2 * d.g2) * 2 * d.g2 / (d.g1 + 2 * d.g2));
  return d;
}

/// Boundary values resolve to the larger-Omega phase.
template <typename Scalar>
GroundPhase classify_ground_phase(const ModelParams<Scalar>& p) {
  const auto d = derive(p);
  if (p.omega < d.omega_c2) return GroundPhase::Stripe;
  if (p.omega < d.omega_c1) return GroundPhase::Magnetized;
  return GroundPhase::Normal;
}

/// Lower and upper single-particle subband energies at momentum (kx, 0, 0).
template <typename Scalar>
std::pair<Scalar, Scalar> single_particle_dispersion(const ModelParams<Scalar>& p, Scalar kx) {
  using std::sqrt;
  const Scalar kinetic = kx * kx / 2;
  const Scalar gap = sqrt(p.k0 * p.k0 * kx * kx + p.omega * p.omega / 4);
  return {kinetic - gap, kinetic + gap};
}

}  // namespace socdpt
