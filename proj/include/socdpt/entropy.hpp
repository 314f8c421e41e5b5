#pragma once

// Entanglement entropy between the two condensate modes for the binomial
// (coherent two-mode) state.

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "socdpt/averaging.hpp"
#include "socdpt/meanfield.hpp"

namespace socdpt {

template <typename Scalar>
struct EntropyResult {
  Scalar e_vn{};    ///< bits
  Scalar e_norm{};  ///< e_vn / log2(N + 1)
};

/// ln C(N, n) for n = 0..N.
template <typename Scalar>
std::vector<Scalar> log_binomials(int n_atoms) {
  using std::lgamma;
  std::vector<Scalar> out(static_cast<std::size_t>(n_atoms) + 1);
  const Scalar top = lgamma(static_cast<Scalar>(n_atoms) + 1);
  for (int k = 0; k <= n_atoms; ++k)
    out[static_cast<std::size_t>(k)] =
        top - lgamma(static_cast<Scalar>(k) + 1) - lgamma(static_cast<Scalar>(n_atoms - k) + 1);
  return out;
}

/// Shannon entropy (bits) of Binomial(N, p_r). Weights live in the log domain
/// so large N does not underflow.
template <typename Scalar>
class BinomialEntropy {
 public:
  explicit BinomialEntropy(int n_atoms) : n_(n_atoms), log_binom_(log_binomials<Scalar>(n_atoms)) {
    if (n_atoms < 1) throw std::invalid_argument("BinomialEntropy: N must be >= 1");
    using std::log2;
    max_bits_ = log2(static_cast<Scalar>(n_atoms) + 1);
  }

  int n_atoms() const { return n_; }
  Scalar max_bits() const { return max_bits_; }

  Scalar bits(Scalar p_r) const {
    using std::exp;
    using std::log;
    const Scalar p_l = 1 - p_r;
    if (!(p_r > 0) || !(p_l > 0)) return 0;
    const Scalar lr = log(p_r), ll = log(p_l);
    Scalar h = 0;
    for (int k = 0; k <= n_; ++k) {
      const Scalar lp = log_binom_[static_cast<std::size_t>(k)] + k * lr + (n_ - k) * ll;
      const Scalar p = exp(lp);
      h -= p * lp;
    }
    return h / std::numbers::ln2_v<Scalar>;
  }

  EntropyResult<Scalar> operator()(Scalar p_r) const {
    const Scalar e = bits(p_r);
    return {e, e / max_bits_};
  }

 private:
  int n_;
  std::vector<Scalar> log_binom_;
  Scalar max_bits_{};
};

/// Population fraction of the +k_m mode, normalized against integration drift.
template <typename Scalar>
Scalar right_fraction(const Spinor<Scalar>& psi) {
  const Scalar r = std::norm(psi(0));
  return r / (r + std::norm(psi(1)));
}

template <typename Scalar>
EntropyResult<Scalar> von_neumann_entropy(const Spinor<Scalar>& psi, int n_atoms) {
  return BinomialEntropy<Scalar>(n_atoms)(right_fraction(psi));
}

/// Normalized entropy E(t) sampled along a trajectory, up to `window` (+1 sample).
template <typename Scalar>
std::vector<Scalar> entropy_series(const Trajectory<Scalar>& traj, int n_atoms, Scalar window) {
  const BinomialEntropy<Scalar> ent(n_atoms);
  const std::size_t count =
      std::min(traj.states.size(), detail::steps_to(window, traj.dt) + 1);
  std::vector<Scalar> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = ent(right_fraction(traj.states[i])).e_norm;
  return out;
}

template <typename Scalar>
Scalar time_averaged_entropy(const Trajectory<Scalar>& traj, int n_atoms, Scalar window) {
  const auto e = entropy_series(traj, n_atoms, window);
  return window_average(std::span<const Scalar>(e), traj.dt, window);
}

}  // namespace socdpt
