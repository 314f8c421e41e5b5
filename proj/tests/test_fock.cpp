#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "socdpt/fock.hpp"

using namespace socdpt;
using cd = std::complex<double>;
using L = Ladder;

namespace {

Spinor<double> random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Spinor<double> psi;
  psi << cd(g(rng), g(rng)), cd(g(rng), g(rng));
  psi.normalize();
  return psi;
}

Spinor<double> balanced() {
  Spinor<double> psi;
  psi << cd(1 / std::sqrt(2.0), 0), cd(1 / std::sqrt(2.0), 0);
  return psi;
}

// Dense reference: two truncated oscillators, (N+2)^2 dimensional, with
// the state embedded at |n, N-n>. One spare level keeps single creation
// steps exact.
struct Dense {
  int levels;
  Eigen::MatrixXcd a, b, ad, bd;
  Eigen::VectorXcd ket;

  explicit Dense(const FockVector<double>& f) : levels(f.n_atoms + 2) {
    Eigen::MatrixXcd ann = Eigen::MatrixXcd::Zero(levels, levels);
    for (int n = 1; n < levels; ++n) ann(n - 1, n) = std::sqrt(double(n));
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(levels, levels);
    a = kron(ann, id);
    b = kron(id, ann);
    ad = a.adjoint();
    bd = b.adjoint();
    ket = Eigen::VectorXcd::Zero(levels * levels);
    for (int n = 0; n <= f.n_atoms; ++n) ket(n * levels + (f.n_atoms - n)) = f.coeffs(n);
  }

  static Eigen::MatrixXcd kron(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    Eigen::MatrixXcd out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j) out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return out;
  }

  cd expect(const OpSpec& op) const {
    Eigen::VectorXcd v = ket;
    for (auto it = op.rbegin(); it != op.rend(); ++it) {
      switch (*it) {
        case L::R: v = a * v; break;
        case L::RDag: v = ad * v; break;
        case L::L: v = b * v; break;
        case L::LDag: v = bd * v; break;
      }
    }
    return ket.dot(v);
  }
};

}  // namespace

TEST_CASE("state construction") {
  const auto pole = build_state(magnetized_state<double>(), 3);
  CHECK(std::abs(pole.coeffs(3)) == doctest::Approx(1.0));
  for (int k = 0; k < 3; ++k) CHECK(pole.coeffs(k) == cd(0, 0));

  const auto two = build_state(balanced(), 2);
  CHECK(std::norm(two.coeffs(0)) == doctest::Approx(0.25));
  CHECK(std::norm(two.coeffs(1)) == doctest::Approx(0.5));
  CHECK(std::norm(two.coeffs(2)) == doctest::Approx(0.25));

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> n_dist(1, 100);
  for (int i = 0; i < 50; ++i) {
    const auto f = build_state(random_state(rng), n_dist(rng));
    CHECK(f.coeffs.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("coefficients carry the conjugated amplitudes") {
  Spinor<double> psi;
  psi << std::polar(0.6, 0.7), std::polar(0.8, -0.2);
  const auto f = build_state(psi, 1);
  CHECK(std::abs(f.coeffs(1) - std::conj(psi(0))) < 1e-15);
  CHECK(std::abs(f.coeffs(0) - std::conj(psi(1))) < 1e-15);
}

TEST_CASE("range checks") {
  CHECK_THROWS_AS(build_state(balanced(), 0), std::invalid_argument);
  CHECK_THROWS_AS(build_state(balanced(), kMaxFockAtoms + 1), std::invalid_argument);
  const auto f = build_state(balanced(), 4);
  CHECK_THROWS_AS(moment(f, parse_op("R+ R L+ L R+ R L+ L R")), std::invalid_argument);
  CHECK_THROWS_AS(parse_op("R+ X"), std::invalid_argument);
  CHECK(parse_op("Rd R Ld L") == parse_op("R+ R L+ L"));
}

TEST_CASE("moment examples") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const auto f = build_state(random_state(rng), 7);
    CHECK((moment(f, {L::RDag, L::R}) + moment(f, {L::LDag, L::L})).real() == doctest::Approx(7.0));
    CHECK((moment(f, {L::R, L::RDag}) - moment(f, {L::RDag, L::R})).real() == doctest::Approx(1.0));
    CHECK(std::abs((moment(f, {L::R, L::RDag}) - moment(f, {L::RDag, L::R})).imag()) < 1e-13);
  }
  CHECK(moment(build_state(balanced(), 10), {L::RDag, L::R, L::LDag, L::L}).real() == doctest::Approx(22.5));
  CHECK(moment(build_state(magnetized_state<double>(), 10), {L::RDag, L::L}) == cd(0, 0));
  // a number-changing product has zero expectation
  CHECK(moment(build_state(balanced(), 6), {L::RDag, L::R, L::R}) == cd(0, 0));
}

TEST_CASE("ladder action agrees with dense matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> sym(0, 3);
  for (int n : {1, 2, 5}) {
    const auto f = build_state(random_state(rng), n);
    const Dense dense(f);
    for (int trial = 0; trial < 40; ++trial) {
      // balanced words only: the dense embedding truncates at N + 1 quanta
      OpSpec op{static_cast<L>(sym(rng)), static_cast<L>(sym(rng))};
      op.insert(op.begin(), {L::RDag, L::LDag});
      op.push_back(L::R);
      op.push_back(L::L);
      CHECK(std::abs(moment(f, op) - dense.expect(op)) < 1e-12);
    }
    for (const char* text : {"R+ L", "R+ R+ R L", "R+ L+ L L", "R+ R+ L L", "R L+", "R L+ R+ L"}) {
      const auto op = parse_op(text);
      CHECK(std::abs(moment(f, op) - dense.expect(op)) < 1e-12);
    }
  }
}

TEST_CASE("global phase invariance") {
  std::mt19937_64 rng(13);
  const auto psi = random_state(rng);
  const Spinor<double> rotated = psi * std::polar(1.0, 2.1);
  const auto a = oracle_moments(build_state(psi, 9));
  const auto b = oracle_moments(build_state(rotated, 9));
  CHECK(std::abs(a.c - b.c) < 1e-12);
  CHECK(std::abs(a.u - b.u) < 1e-12);
  CHECK(std::abs(a.p - b.p) < 1e-12);
  CHECK(std::abs(a.w - b.w) < 1e-12);
}

TEST_CASE("closed-form initial moments match the oracle") {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 12; ++n) {
    for (int i = 0; i < 20; ++i) {
      const auto psi = random_state(rng);
      const auto f = build_state(psi, n);
      const auto x = init_moments(psi, n);
      const auto y = oracle_moments(f);
      CHECK(std::abs(x.n_r - y.n_r) < 1e-12);
      CHECK(std::abs(x.n_l - y.n_l) < 1e-12);
      CHECK(std::abs(x.c - y.c) < 1e-12);
      CHECK(std::abs(x.w - y.w) < 1e-12);
      CHECK(std::abs(x.u - y.u) < 1e-12);
      CHECK(std::abs(x.v - y.v) < 1e-12);
      CHECK(std::abs(x.p - y.p) < 1e-12);
      CHECK(std::abs(x.q_r - y.q_r) < 1e-12);
      CHECK(std::abs(x.q_l - y.q_l) < 1e-12);
      CHECK(std::abs(hz_parameter(x, n).e_hz - hz_from_fock(f).e_hz) < 1e-10);
      CHECK(std::abs(von_neumann_entropy(psi, n).e_vn - entropy_from_fock(f).e_vn) < 1e-10);
    }
  }
}

TEST_CASE("measures from the oracle") {
  const auto b10 = build_state(balanced(), 10);
  CHECK(hz_from_fock(b10).e_hz == doctest::Approx(0.5).epsilon(1e-13));
  const auto pole = build_state(magnetized_state<double>(), 10);
  CHECK(entropy_from_fock(pole).e_vn == 0);
  CHECK(hz_from_fock(pole).e_hz == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(entropy_from_fock(build_state(balanced(), 2)).e_vn == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("spin expectations fix the Bloch convention") {
  // <J_x> = N s_x / 2 and <J_z> = N s_z / 2; J_y comes out with the
  // opposite sign because the Fock state carries conj(alpha), conj(beta).
  std::mt19937_64 rng(19);
  for (int i = 0; i < 10; ++i) {
    const auto psi = random_state(rng);
    const int n = 6;
    const auto f = build_state(psi, n);
    const auto s = bloch(psi);
    const cd rl = moment(f, {L::RDag, L::L});
    const cd lr = moment(f, {L::R, L::LDag});
    const double jx = ((rl + lr) / 2.0).real();
    const double jy = ((rl - lr) / cd(0, 2)).real();
    const double jz = ((moment(f, {L::RDag, L::R}) - moment(f, {L::LDag, L::L})) / 2.0).real();
    CHECK(jx == doctest::Approx(n * s.sx / 2).epsilon(1e-12));
    CHECK(jy == doctest::Approx(-n * s.sy / 2).epsilon(1e-12));
    CHECK(jz == doctest::Approx(n * s.sz / 2).epsilon(1e-12));
  }
}
