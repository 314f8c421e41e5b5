#pragma once

// Nonlinear two-mode mean-field dynamics of the condensate amplitudes
// (alpha, beta) on the modes at +k_m and -k_m.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "socdpt/averaging.hpp"
#include "socdpt/model.hpp"
#include "socdpt/rk4.hpp"

namespace socdpt {

template <typename Scalar>
using Spinor = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

template <typename Scalar>
struct BlochVector {
  Scalar sx{}, sy{}, sz{};
};

/// sx = 2 Re(conj(alpha) beta), sy = 2 Im(conj(alpha) beta), sz = |alpha|^2 - |beta|^2.
template <typename Scalar>
BlochVector<Scalar> bloch(const Spinor<Scalar>& psi) {
  const std::complex<Scalar> coh = std::conj(psi(0)) * psi(1);
  return {2 * coh.real(), 2 * coh.imag(), std::norm(psi(0)) - std::norm(psi(1))};
}

template <typename Scalar>
Spinor<Scalar> magnetized_state() {
  return Spinor<Scalar>(std::complex<Scalar>(1), std::complex<Scalar>(0));
}

/// H = V_p sigma_x + E_m s_z sigma_z + E_s (s_x sigma_x + s_y sigma_y).
/// Terms proportional to the identity only rotate the global phase and are left out.
template <typename Scalar>
Matrix2c<Scalar> effective_hamiltonian(const Spinor<Scalar>& psi, const Derived<Scalar>& d) {
  const auto s = bloch(psi);
  const std::complex<Scalar> off(d.vp + d.es * s.sx, -d.es * s.sy);
  Matrix2c<Scalar> h;
  h << d.em * s.sz, off, std::conj(off), -d.em * s.sz;
  return h;
}

/// Conserved functional whose variation generates the effective Hamiltonian.
template <typename Scalar>
Scalar mean_field_energy(const Spinor<Scalar>& psi, const Derived<Scalar>& d) {
  const auto s = bloch(psi);
  return d.vp * s.sx + d.em / 2 * s.sz * s.sz + d.es / 2 * (s.sx * s.sx + s.sy * s.sy);
}

/// Reference oscillation time pi / V_p. Without perturbation the critical
/// coupling (E_s - E_m) / 2 sets the scale instead.
template <typename Scalar>
Scalar estimated_period(const Derived<Scalar>& d) {
  const Scalar rate = d.vp > 0 ? d.vp : (d.es - d.em) / 2;
  if (!(rate > 0)) throw std::invalid_argument("estimated_period: no dynamical time scale");
  return std::numbers::pi_v<Scalar> / rate;
}

/// Fixed step of T_est / (2 * 10^4), scaled by `dt_scale`.
template <typename Scalar>
Scalar default_dt(const Derived<Scalar>& d, Scalar dt_scale = 1) {
  return dt_scale * estimated_period(d) / Scalar(2e4);
}

template <typename Scalar>
struct Trajectory {
  Scalar dt{};
  std::vector<Scalar> times;
  std::vector<Spinor<Scalar>> states;
  std::optional<Scalar> period;  ///< empty when no return was found within the horizon
  Scalar max_norm_drift{0};

  static constexpr Scalar kNormDriftLimit = Scalar(1e-6);

  Scalar horizon() const { return times.empty() ? Scalar(0) : times.back(); }
  bool integration_failed() const { return !(max_norm_drift <= kNormDriftLimit); }

  std::vector<Scalar> sz() const {
    std::vector<Scalar> out;
    out.reserve(states.size());
    for (const auto& s : states) out.push_back(std::norm(s(0)) - std::norm(s(1)));
    return out;
  }
};

template <typename Scalar>
std::optional<Scalar> detect_period(const Trajectory<Scalar>& traj, Scalar tol = Scalar(1e-6));

/// Energy of the balanced anti-phase state (s_x = -1), the hyperbolic fixed
/// point whose stable and unstable manifolds form the separatrix.
template <typename Scalar>
Scalar separatrix_energy(const Derived<Scalar>& d) {
  return d.es / 2 - d.vp;
}

/// True when `psi` starts on the separatrix, where the exact motion never
/// returns. Numerically RK4 round-off eventually kicks the state off the
/// saddle, so a return found there is an artifact.
template <typename Scalar>
bool on_separatrix(const Spinor<Scalar>& psi, const Derived<Scalar>& d) {
  using std::abs;
  const Scalar scale = abs(d.es) + abs(d.em) + abs(d.vp);
  return scale > 0 && abs(mean_field_energy(psi, d) - separatrix_energy(d)) <= Scalar(1e-10) * scale;
}

namespace detail {

template <typename Scalar>
Spinor<Scalar> meanfield_rhs(const Spinor<Scalar>& psi, const Derived<Scalar>& d) {
  return std::complex<Scalar>(0, -1) * (effective_hamiltonian(psi, d) * psi);
}

template <typename Scalar>
void advance(Trajectory<Scalar>& traj, const Derived<Scalar>& d, std::size_t steps) {
  traj.times.reserve(traj.times.size() + steps);
  traj.states.reserve(traj.states.size() + steps);
  auto rhs = [&d](const Spinor<Scalar>& y) { return meanfield_rhs(y, d); };
  Spinor<Scalar> y = traj.states.back();
  std::size_t k = traj.states.size() - 1;
  for (std::size_t i = 0; i < steps; ++i) {
    y = rk4_step(y, traj.dt, rhs);
    ++k;
    traj.times.push_back(static_cast<Scalar>(k) * traj.dt);
    traj.states.push_back(y);
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(y.squaredNorm() - 1));
  }
}

template <typename Scalar>
std::size_t steps_to(Scalar horizon, Scalar dt) {
  return static_cast<std::size_t>(std::ceil(horizon / dt - Scalar(1e-9)));
}

}  // namespace detail

/// Fixed-step RK4 solution of i d/dt (alpha, beta) = H_eff (alpha, beta).
/// The state is never renormalized; the drift is recorded on the trajectory.
template <typename Scalar>
Trajectory<Scalar> evolve(const Spinor<Scalar>& initial, const Derived<Scalar>& d, Scalar horizon,
                          Scalar dt) {
  using std::isfinite;
  if (!isfinite(dt) || !(dt > 0)) throw std::invalid_argument("evolve: dt must be positive and finite");
  if (!isfinite(horizon) || horizon < 10 * dt)
    throw std::invalid_argument("evolve: horizon must be finite and at least 10 dt");
  if (!initial.allFinite()) throw std::invalid_argument("evolve: non-finite initial state");
  if (!isfinite(d.vp) || !isfinite(d.es) || !isfinite(d.em))
    throw std::invalid_argument("evolve: non-finite model constants");

  Trajectory<Scalar> traj;
  traj.dt = dt;
  traj.times.push_back(0);
  traj.states.push_back(initial);
  traj.max_norm_drift = std::abs(initial.squaredNorm() - 1);
  detail::advance(traj, d, detail::steps_to(horizon, dt));
  if (!on_separatrix(initial, d)) traj.period = detect_period(traj);
  return traj;
}

/// Continue an existing trajectory to a longer horizon. The system is
/// autonomous, so the result is identical to a single run to that horizon.
template <typename Scalar>
void extend(Trajectory<Scalar>& traj, const Derived<Scalar>& d, Scalar horizon) {
  const std::size_t target = detail::steps_to(horizon, traj.dt);
  if (target + 1 > traj.states.size()) detail::advance(traj, d, target + 1 - traj.states.size());
  if (!on_separatrix(traj.states.front(), d)) traj.period = detect_period(traj);
}

/// Integrates from `initial`, doubling the horizon until a period is found
/// or `cap` is reached.
template <typename Scalar>
Trajectory<Scalar> evolve_until_period(const Spinor<Scalar>& initial, const Derived<Scalar>& d,
                                       Scalar dt, Scalar first_horizon, Scalar cap) {
  Scalar horizon = std::min(first_horizon, cap);
  auto traj = evolve(initial, d, horizon, dt);
  while (!traj.period && horizon < cap && !traj.integration_failed()) {
    horizon = std::min(2 * horizon, cap);
    extend(traj, d, horizon);
  }
  return traj;
}

/// First return of s_z to its initial value with the initial direction of
/// motion. When the trajectory starts at a turning point of s_z (the
/// magnetized poles), the return is the next turning point of the same kind
/// whose refined extremum lies within `tol` of the start.
template <typename Scalar>
std::optional<Scalar> detect_period(const Trajectory<Scalar>& traj, Scalar tol) {
  const auto sz = traj.sz();
  const std::size_t n = sz.size();
  if (n < 3) return std::nullopt;
  const Scalar s0 = sz[0];
  const Scalar dt = traj.dt;

  if (std::abs(sz[1] - s0) < tol) {
    // turning-point start; orientation from the first clear departure
    Scalar sign = 0;
    std::size_t i = 1;
    for (; i < n; ++i) {
      if (std::abs(sz[i] - s0) > tol) {
        sign = sz[i] < s0 ? Scalar(1) : Scalar(-1);
        break;
      }
    }
    if (sign == 0) return std::nullopt;
    for (; i + 1 < n; ++i) {
      const Scalar a = sign * sz[i - 1], b = sign * sz[i], c = sign * sz[i + 1];
      if (!(b > a && b >= c)) continue;
      const Scalar curvature = a - 2 * b + c;
      Scalar offset = 0;
      Scalar peak = b;
      if (curvature < 0) {
        offset = (a - c) / (2 * curvature);
        peak = b - (a - c) * offset / 4;
      }
      if (std::abs(peak - sign * s0) < tol) return (static_cast<Scalar>(i) + offset) * dt;
    }
    return std::nullopt;
  }

  const Scalar dir = sz[1] > s0 ? Scalar(1) : Scalar(-1);
  bool turned = false;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Scalar a = sz[i] - s0, b = sz[i + 1] - s0;
    if (!turned) {
      if (dir * a > 0 && dir * b <= 0) turned = true;
      continue;
    }
    if (dir * a < 0 && dir * b >= 0) {
      const Scalar frac = a / (a - b);
      return (static_cast<Scalar>(i) + frac) * dt;
    }
  }
  return std::nullopt;
}

/// Averaging window: the detected period, or `cap` when none was found.
template <typename Scalar>
Scalar averaging_window(const Trajectory<Scalar>& traj, Scalar cap) {
  return traj.period ? *traj.period : std::min(cap, traj.horizon());
}

/// Time average of s_z over [0, window].
template <typename Scalar>
Scalar order_parameter(const Trajectory<Scalar>& traj, Scalar window) {
  const auto sz = traj.sz();
  return window_average(std::span<const Scalar>(sz), traj.dt, window);
}

template <typename Scalar>
Scalar min_sz(const Trajectory<Scalar>& traj, Scalar window) {
  const auto sz = traj.sz();
  Scalar m = sz.front();
  for (std::size_t i = 0; i < sz.size() && static_cast<Scalar>(i) * traj.dt <= window + traj.dt; ++i)
    m = std::min(m, sz[i]);
  return m;
}

}  // namespace socdpt
