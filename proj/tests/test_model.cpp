// Derived constants are frozen from tests/oracles/model_constants.py, a
// 30-digit mpmath evaluation that goes through tan 2theta instead.

#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "socdpt/model.hpp"

using namespace socdpt;
using socdpt::test::baseline;

TEST_CASE("derived constants at the reference point") {
  const auto d = derive(baseline());
  CHECK(d.sin2theta == 0.15);
  CHECK(d.km == doctest::Approx(0.98868599666425942558).epsilon(1e-14));
  CHECK(d.theta == doctest::Approx(0.075284136388343013212).epsilon(1e-14));
  CHECK(d.g1 == doctest::Approx(0.499675).epsilon(1e-14));
  CHECK(d.g2 == doctest::Approx(0.000325).epsilon(1e-11));
  CHECK(d.es == doctest::Approx(0.00562134375).epsilon(1e-13));
  CHECK(d.em == doctest::Approx(0.0003176875).epsilon(1e-11));
  CHECK(d.v0_crit == doctest::Approx(0.070715416666666666667).epsilon(1e-12));
  CHECK(d.omega_c1 == doctest::Approx(1.9987).epsilon(1e-14));
  CHECK(d.omega_c2 == doctest::Approx(0.088250658820722185689).epsilon(1e-11));
  CHECK(d.vp == 0);
}

TEST_CASE("mixing angle identities") {
  for (double omega : {1e-6, 0.01, 0.3, 0.9, 1.5, 1.99}) {
    for (double k0 : {0.5, 1.0, 2.0}) {
      auto p = baseline();
      p.k0 = k0;
      p.omega = omega * k0 * k0;
      const auto d = derive(p);
      CHECK(std::abs(std::sin(2 * d.theta) - p.omega / (2 * k0 * k0)) < 1e-12);
      CHECK(std::abs(d.km * d.km + std::pow(p.omega / (2 * k0), 2) - k0 * k0) < 1e-12 * k0 * k0);
    }
  }
}

TEST_CASE("E_s is 2 G1 cos^2 sin^2 and E_m is G2 cos^2 2theta") {
  const auto d = derive(baseline());
  const double c = std::cos(d.theta), s = std::sin(d.theta);
  CHECK(d.es == doctest::Approx(2 * d.g1 * c * c * s * s).epsilon(1e-13));
  CHECK(d.em == doctest::Approx(d.g2 * std::pow(std::cos(2 * d.theta), 2)).epsilon(1e-12));
}

TEST_CASE("v0_crit is linear in density") {
  const auto d = derive(baseline());
  for (double lambda : {0.25, 0.8, 3.0}) {
    auto p = baseline();
    p.gs_n *= lambda;
    p.ga_n *= lambda;
    const auto dl = derive(p);
    CHECK(dl.v0_crit == doctest::Approx(lambda * d.v0_crit).epsilon(1e-14));
    CHECK(dl.theta == d.theta);
    CHECK(dl.km == d.km);
  }
}

TEST_CASE("small Raman coupling limit") {
  auto p = baseline(0.05);
  p.omega = 1e-9;
  const auto d = derive(p);
  CHECK(d.theta < 1e-9);
  CHECK(d.vp < 1e-10);
  CHECK(d.km == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("V_p is V0 sin(2theta) / 4") {
  const auto d = derive(baseline(0.04));
  CHECK(d.vp == doctest::Approx(0.04 * 0.15 / 4).epsilon(1e-15));
}

TEST_CASE("ground phase classification") {
  CHECK(classify_ground_phase(baseline()) == GroundPhase::Magnetized);

  auto p = baseline();
  p.omega = 0.088;
  CHECK(classify_ground_phase(p) == GroundPhase::Stripe);
  p.omega = 1.9990;
  CHECK(classify_ground_phase(p) == GroundPhase::Normal);

  // boundaries go to the larger-Omega side
  p.omega = derive(baseline()).omega_c2;
  CHECK(classify_ground_phase(p) == GroundPhase::Magnetized);
  p.omega = derive(baseline()).omega_c1;
  CHECK(classify_ground_phase(p) == GroundPhase::Normal);
}

TEST_CASE("classification is invariant under k0 rescaling") {
  for (double omega : {0.05, 0.3, 1.999}) {
    auto p = baseline();
    p.omega = omega;
    const auto ref = classify_ground_phase(p);
    for (double k0 : {0.5, 2.0, 7.0}) {
      auto q = p;
      q.k0 = k0;
      q.omega = omega * k0 * k0;
      q.gs_n *= k0 * k0;
      q.ga_n *= k0 * k0;
      CHECK(classify_ground_phase(q) == ref);
    }
  }
}

TEST_CASE("single-particle dispersion") {
  auto p = baseline();
  auto [lo, hi] = single_particle_dispersion(p, 0.0);
  CHECK(lo == doctest::Approx(-0.15));
  CHECK(hi == doctest::Approx(0.15));

  const double km = derive(p).km;
  const double h = 1e-4;
  const double slope = (single_particle_dispersion(p, km + h).first - single_particle_dispersion(p, km - h).first) / (2 * h);
  CHECK(std::abs(slope) < 1e-8);
  for (double k = 0; k < 2.0; k += 0.01) CHECK(single_particle_dispersion(p, k).first >= single_particle_dispersion(p, km).first - 1e-15);

  p.omega = 0;
  CHECK(single_particle_dispersion(p, 1.0).first == doctest::Approx(-0.5));
}

TEST_CASE("parameter validation names the offending key") {
  auto expect_key = [](ModelParams<double> p, const char* key) {
    try {
      validate(p);
      FAIL("expected rejection of " << key);
    } catch (const ParameterError& e) {
      CHECK(e.key() == key);
    }
  };
  auto p = baseline();
  p.k0 = 0;
  expect_key(p, "k0");
  p = baseline();
  p.omega = 2.0;
  expect_key(p, "omega");
  p = baseline();
  p.ga_n = 1.0;
  expect_key(p, "ga_n");
  p = baseline();
  p.gs_n = -1;
  expect_key(p, "gs_n");
  p = baseline();
  p.n_atoms = 0;
  expect_key(p, "n_atoms");
  p = baseline();
  p.v0 = -0.1;
  expect_key(p, "v0");
  p = baseline();
  p.omega = std::nan("");
  expect_key(p, "omega");
}

TEST_CASE("scalar-generic derivation in long double") {
  ModelParams<long double> p;
  p.omega = 0.3L;
  p.gs_n = 1.0L;
  p.ga_n = 0.9987L;
  const auto d = derive(p);
  CHECK(static_cast<double>(d.v0_crit) == doctest::Approx(0.070715416666666666667).epsilon(1e-15));
}
