#pragma once

// Truncated equations of motion for the second- and fourth-order two-mode
// correlators, and the Hillery-Zubairy entanglement parameter built from them.
// a = psi_R (mode at +k_m), b = psi_L (mode at -k_m). See
// docs/moment_hierarchy.md for the closure and the two completion equations.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "socdpt/averaging.hpp"
#include "socdpt/meanfield.hpp"
#include "socdpt/rk4.hpp"

namespace socdpt {

template <typename Scalar>
struct MomentState {
  using Complex = std::complex<Scalar>;
  Scalar n_r{};  ///< <a+ a>
  Scalar n_l{};  ///< <b+ b>
  Complex c{};   ///< <a+ b>
  Scalar w{};    ///< <a+ a b+ b>
  Complex u{};   ///< <a+ a+ a b>
  Complex v{};   ///< <a+ b+ b b>
  Complex p{};   ///< <a+ a+ b b>
  Scalar q_r{};  ///< <a+ a+ a a>
  Scalar q_l{};  ///< <b+ b+ b b>
};

template <typename Scalar>
using MomentVector = Eigen::Matrix<Scalar, 13, 1>;

template <typename Scalar>
MomentVector<Scalar> pack(const MomentState<Scalar>& m) {
  MomentVector<Scalar> y;
  y << m.n_r, m.n_l, m.c.real(), m.c.imag(), m.w, m.u.real(), m.u.imag(), m.v.real(), m.v.imag(),
      m.p.real(), m.p.imag(), m.q_r, m.q_l;
  return y;
}

template <typename Scalar>
MomentState<Scalar> unpack(const MomentVector<Scalar>& y) {
  using C = std::complex<Scalar>;
  return {y(0), y(1), C(y(2), y(3)), y(4), C(y(5), y(6)), C(y(7), y(8)), C(y(9), y(10)), y(11), y(12)};
}

/// Exact correlators of the N-particle state whose Fock expansion carries
/// conj(alpha)^n conj(beta)^(N-n) on |n, N-n>.
template <typename Scalar>
MomentState<Scalar> init_moments(const Spinor<Scalar>& psi, int n_atoms) {
  const Scalar n = static_cast<Scalar>(n_atoms);
  const Scalar pairs = n * (n - 1);
  const auto a = psi(0), b = psi(1);
  const Scalar ra = std::norm(a), rb = std::norm(b);
  const auto coh = a * std::conj(b);
  MomentState<Scalar> m;
  m.n_r = n * ra;
  m.n_l = n * rb;
  m.c = n * coh;
  m.w = pairs * ra * rb;
  m.u = pairs * ra * coh;
  m.v = pairs * rb * coh;
  m.p = pairs * coh * coh;
  m.q_r = pairs * ra * ra;
  m.q_l = pairs * rb * rb;
  return m;
}

/// Two-body coupling of the hierarchy. E_s - E_m is an energy per particle,
/// so the per-pair strength is (E_s - E_m) / N.
template <typename Scalar>
Scalar pair_coupling(const Derived<Scalar>& d, int n_atoms) {
  return (d.es - d.em) / static_cast<Scalar>(n_atoms);
}

/// Time derivatives of the nine correlators. `kappa` is the pair coupling.
template <typename Scalar>
MomentState<Scalar> moment_rates(const MomentState<Scalar>& m, Scalar vp, Scalar kappa) {
  using C = std::complex<Scalar>;
  const C i(0, 1);
  const Scalar imb = m.n_r - m.n_l;
  const C u_bar = std::conj(m.u);  // <a+ a a b+>
  const C v_bar = std::conj(m.v);  // <a b+ b+ b>

  MomentState<Scalar> r;
  r.n_r = (-i * vp * (m.c - std::conj(m.c))).real();
  r.n_l = (-i * vp * (std::conj(m.c) - m.c)).real();
  r.c = -i * (vp * imb + 2 * kappa * (m.u - m.v));
  r.w = (-i * vp * (u_bar + m.v - m.u - v_bar)).real();
  r.u = -i * (vp * (m.q_r + m.p - 2 * m.w) + 2 * kappa * m.u * (imb + 1));
  r.p = -i * (2 * vp * (m.u - m.v) + 4 * kappa * m.p * imb);
  r.q_r = (Scalar(-2) * i * vp * (m.u - u_bar)).real();
  // completion by R <-> L relabeling: u -> conj(v), q_r -> q_l, p -> conj(p)
  r.v = std::conj(-i * (vp * (m.q_l + std::conj(m.p) - 2 * m.w) + 2 * kappa * v_bar * (1 - imb)));
  r.q_l = (Scalar(-2) * i * vp * (v_bar - m.v)).real();
  return r;
}

template <typename Scalar>
struct MomentTrajectory {
  Scalar dt{};
  int n_atoms{};
  std::vector<Scalar> times;
  std::vector<MomentState<Scalar>> states;
  Scalar max_number_violation{0};  ///< relative drift of n_r + n_l
  Scalar max_pair_violation{0};    ///< relative drift of q_r + q_l + 2w

  static constexpr Scalar kConservationLimit = Scalar(1e-8);

  bool integration_failed() const {
    return !(max_number_violation <= kConservationLimit) || !(max_pair_violation <= kConservationLimit);
  }
};

template <typename Scalar>
MomentTrajectory<Scalar> evolve_moments(const MomentState<Scalar>& m0, const Derived<Scalar>& d,
                                        Scalar horizon, Scalar dt) {
  using std::isfinite;
  if (!isfinite(dt) || !(dt > 0)) throw std::invalid_argument("evolve_moments: dt must be positive");
  if (!isfinite(horizon) || horizon < 0) throw std::invalid_argument("evolve_moments: bad horizon");
  const Scalar total = m0.n_r + m0.n_l;
  const int n_atoms = static_cast<int>(std::lround(total));
  if (n_atoms < 1) throw std::invalid_argument("evolve_moments: moments carry no particles");

  const Scalar n = static_cast<Scalar>(n_atoms);
  const Scalar pairs = n * (n - 1);
  const Scalar kappa = pair_coupling(d, n_atoms);
  const Scalar vp = d.vp;

  MomentTrajectory<Scalar> mt;
  mt.dt = dt;
  mt.n_atoms = n_atoms;
  const std::size_t steps = detail::steps_to(horizon, dt);
  mt.times.reserve(steps + 1);
  mt.states.reserve(steps + 1);

  auto check = [&](const MomentState<Scalar>& m) {
    mt.max_number_violation = std::max(mt.max_number_violation, std::abs(m.n_r + m.n_l - n) / n);
    const Scalar pair_scale = pairs > 0 ? pairs : Scalar(1);
    mt.max_pair_violation =
        std::max(mt.max_pair_violation, std::abs(m.q_r + m.q_l + 2 * m.w - pairs) / pair_scale);
  };

  auto rhs = [vp, kappa](const MomentVector<Scalar>& y) {
    return pack(moment_rates(unpack(y), vp, kappa));
  };
  MomentVector<Scalar> y = pack(m0);
  mt.times.push_back(0);
  mt.states.push_back(m0);
  check(m0);
  for (std::size_t k = 1; k <= steps; ++k) {
    y = rk4_step(y, dt, rhs);
    const auto m = unpack(y);
    mt.times.push_back(static_cast<Scalar>(k) * dt);
    mt.states.push_back(m);
    check(m);
  }
  return mt;
}

template <typename Scalar>
struct HzResult {
  Scalar e_hz{};
  bool entangled{};
};

/// (Var J_x + Var J_y) / (N / 2) = (<a+ a b+ b> + N/2 - |<a+ b>|^2) / (N / 2).
template <typename Scalar>
HzResult<Scalar> hz_parameter(const MomentState<Scalar>& m, int n_atoms) {
  const Scalar half = static_cast<Scalar>(n_atoms) / 2;
  const Scalar e = (m.w + half - std::norm(m.c)) / half;
  return {e, e < 1};
}

template <typename Scalar>
std::vector<Scalar> hz_series(const MomentTrajectory<Scalar>& mt) {
  std::vector<Scalar> out;
  out.reserve(mt.states.size());
  for (const auto& m : mt.states) out.push_back(hz_parameter(m, mt.n_atoms).e_hz);
  return out;
}

template <typename Scalar>
Scalar time_averaged_hz(const MomentTrajectory<Scalar>& mt, Scalar window) {
  const auto e = hz_series(mt);
  return window_average(std::span<const Scalar>(e), mt.dt, window);
}

}  // namespace socdpt
