#pragma once

#include "socdpt/model.hpp"

namespace socdpt::test {

// Rb-like reference point used throughout: Omega = 0.3, g_s n = 1, g_a n = 0.9987.
inline ModelParams<double> baseline(double v0 = 0) {
  ModelParams<double> p;
  p.k0 = 1;
  p.omega = 0.3;
  p.gs_n = 1.0;
  p.ga_n = 0.9987;
  p.n_atoms = 100;
  p.v0 = v0;
  return p;
}

inline ModelParams<double> at_ratio(double ratio) {
  return baseline(ratio * derive(baseline()).v0_crit);
}

}  // namespace socdpt::test
