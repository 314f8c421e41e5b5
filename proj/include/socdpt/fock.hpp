#pragma once

// Exact (N+1)-dimensional Fock representation of the coherent two-mode
// state, with ladder-operator evaluation of normal- or anti-normal-ordered
// correlators. Serves as the reference for the moment and entropy routines.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "socdpt/entropy.hpp"
#include "socdpt/meanfield.hpp"
#include "socdpt/moments.hpp"

namespace socdpt {

enum class Ladder { RDag, R, LDag, L };

/// Operator product written left to right; applied to a ket right to left.
using OpSpec = std::vector<Ladder>;

inline constexpr std::size_t kMaxOpLength = 8;
inline constexpr int kMaxFockAtoms = 4096;

/// Parses whitespace-separated symbols from {R+, R, L+, L}.
inline OpSpec parse_op(const std::string& text) {
  OpSpec op;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "R+" || tok == "Rd") op.push_back(Ladder::RDag);
    else if (tok == "R") op.push_back(Ladder::R);
    else if (tok == "L+" || tok == "Ld") op.push_back(Ladder::LDag);
    else if (tok == "L") op.push_back(Ladder::L);
    else throw std::invalid_argument("parse_op: unknown ladder symbol '" + tok + "'");
  }
  return op;
}

template <typename Scalar>
struct FockVector {
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> coeffs;  ///< over |n, N-n>, n = 0..N
  int n_atoms{};
};

/// coeffs[n] = sqrt(C(N,n)) conj(alpha)^n conj(beta)^(N-n).
template <typename Scalar>
FockVector<Scalar> build_state(const Spinor<Scalar>& psi, int n_atoms) {
  using std::abs;
  using std::arg;
  using std::exp;
  using std::log;
  if (n_atoms < 1 || n_atoms > kMaxFockAtoms)
    throw std::invalid_argument("build_state: N must be in [1, 4096]");
  const auto lb = log_binomials<Scalar>(n_atoms);
  const Scalar ma = abs(psi(0)), mb = abs(psi(1));
  const Scalar pa = arg(psi(0)), pb = arg(psi(1));

  FockVector<Scalar> f;
  f.n_atoms = n_atoms;
  f.coeffs.resize(n_atoms + 1);
  for (int k = 0; k <= n_atoms; ++k) {
    const int rest = n_atoms - k;
    if ((k > 0 && ma == 0) || (rest > 0 && mb == 0)) {
      f.coeffs(k) = 0;
      continue;
    }
    Scalar log_mag = lb[static_cast<std::size_t>(k)] / 2;
    if (k > 0) log_mag += k * log(ma);
    if (rest > 0) log_mag += rest * log(mb);
    const Scalar phase = -(k * pa + rest * pb);
    f.coeffs(k) = std::polar(exp(log_mag), phase);
  }
  return f;
}

/// <f| op |f> by direct ladder action. Each operator shifts every basis
/// component by the same occupation offset, so the running ket is stored as
/// amplitudes over the original index plus the pair of offsets.
template <typename Scalar>
std::complex<Scalar> moment(const FockVector<Scalar>& f, const OpSpec& op) {
  using std::sqrt;
  if (op.size() > kMaxOpLength) throw std::invalid_argument("moment: operator longer than 8 symbols");
  const int n_atoms = f.n_atoms;
  auto ket = f.coeffs;
  int shift_r = 0, shift_l = 0;
  for (auto it = op.rbegin(); it != op.rend(); ++it) {
    for (int k = 0; k <= n_atoms; ++k) {
      const int occ_r = k + shift_r;
      const int occ_l = n_atoms - k + shift_l;
      Scalar factor = 0;
      switch (*it) {
        case Ladder::R: factor = occ_r > 0 ? sqrt(static_cast<Scalar>(occ_r)) : Scalar(0); break;
        case Ladder::RDag: factor = occ_r >= 0 ? sqrt(static_cast<Scalar>(occ_r + 1)) : Scalar(0); break;
        case Ladder::L: factor = occ_l > 0 ? sqrt(static_cast<Scalar>(occ_l)) : Scalar(0); break;
        case Ladder::LDag: factor = occ_l >= 0 ? sqrt(static_cast<Scalar>(occ_l + 1)) : Scalar(0); break;
      }
      ket(k) *= factor;
    }
    switch (*it) {
      case Ladder::R: --shift_r; break;
      case Ladder::RDag: ++shift_r; break;
      case Ladder::L: --shift_l; break;
      case Ladder::LDag: ++shift_l; break;
    }
  }
  // ket(k) now sits on |k + shift_r, N - k + shift_l>; overlap with the bra there
  if (shift_r + shift_l != 0) return {0, 0};
  std::complex<Scalar> sum{0, 0};
  for (int k = std::max(0, -shift_r); k <= std::min(n_atoms, n_atoms - shift_r); ++k)
    sum += std::conj(f.coeffs(k + shift_r)) * ket(k);
  return sum;
}

/// All nine hierarchy correlators evaluated exactly.
template <typename Scalar>
MomentState<Scalar> oracle_moments(const FockVector<Scalar>& f) {
  using L = Ladder;
  MomentState<Scalar> m;
  m.n_r = moment(f, {L::RDag, L::R}).real();
  m.n_l = moment(f, {L::LDag, L::L}).real();
  m.c = moment(f, {L::RDag, L::L});
  m.w = moment(f, {L::RDag, L::R, L::LDag, L::L}).real();
  m.u = moment(f, {L::RDag, L::RDag, L::R, L::L});
  m.v = moment(f, {L::RDag, L::LDag, L::L, L::L});
  m.p = moment(f, {L::RDag, L::RDag, L::L, L::L});
  m.q_r = moment(f, {L::RDag, L::RDag, L::R, L::R}).real();
  m.q_l = moment(f, {L::LDag, L::LDag, L::L, L::L}).real();
  return m;
}

/// Variances of J_x = (a+ b + a b+)/2 and J_y = (a+ b - a b+)/(2i) expanded
/// term by term, normalized by <N>/2.
template <typename Scalar>
HzResult<Scalar> hz_from_fock(const FockVector<Scalar>& f) {
  using L = Ladder;
  using C = std::complex<Scalar>;
  const C rl = moment(f, {L::RDag, L::L});
  const C lr = moment(f, {L::R, L::LDag});
  const C rlrl = moment(f, {L::RDag, L::L, L::RDag, L::L});
  const C rllr = moment(f, {L::RDag, L::L, L::R, L::LDag});
  const C lrrl = moment(f, {L::R, L::LDag, L::RDag, L::L});
  const C lrlr = moment(f, {L::R, L::LDag, L::R, L::LDag});

  const C jx = (rl + lr) / Scalar(2);
  const C jy = (rl - lr) / C(0, 2);
  const C jx2 = (rlrl + rllr + lrrl + lrlr) / Scalar(4);
  const C jy2 = -(rlrl - rllr - lrrl + lrlr) / Scalar(4);
  const Scalar var = (jx2 - jx * jx).real() + (jy2 - jy * jy).real();
  const Scalar number = (moment(f, {L::RDag, L::R}) + moment(f, {L::LDag, L::L})).real();
  const Scalar e = var / (number / 2);
  return {e, e < 1};
}

/// Entropy of the Schmidt populations |coeffs[n]|^2.
template <typename Scalar>
EntropyResult<Scalar> entropy_from_fock(const FockVector<Scalar>& f) {
  using std::log2;
  Scalar h = 0;
  for (Eigen::Index k = 0; k < f.coeffs.size(); ++k) {
    const Scalar p = std::norm(f.coeffs(k));
    if (p > 0) h -= p * log2(p);
  }
  const Scalar max_bits = log2(static_cast<Scalar>(f.n_atoms) + 1);
  return {h, h / max_bits};
}

}  // namespace socdpt
