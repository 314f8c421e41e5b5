#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace socdpt {

/// Trapezoidal time average of uniformly sampled `values` over [0, window].
/// A window ending between samples is closed by linear interpolation.
template <typename Scalar>
Scalar window_average(std::span<const Scalar> values, Scalar dt, Scalar window) {
  if (values.empty() || !(dt > 0) || !(window > 0))
    throw std::invalid_argument("window_average: empty signal or non-positive window");
  const Scalar steps = window / dt;
  auto full = static_cast<std::size_t>(std::floor(steps));
  Scalar frac = steps - static_cast<Scalar>(full);
  if (frac < Scalar(1e-9) * steps) frac = 0;
  if (full + (frac > 0 ? 1 : 0) >= values.size()) {
    // tolerate a window that overshoots the last sample by rounding only
    if (full >= values.size() - 1 && steps - static_cast<Scalar>(values.size() - 1) < Scalar(1e-6)) {
      full = values.size() - 1;
      frac = 0;
    } else {
      throw std::invalid_argument("window_average: signal shorter than window");
    }
  }

  Scalar integral = 0;
  for (std::size_t i = 0; i < full; ++i) integral += (values[i] + values[i + 1]) / 2;
  integral *= dt;
  if (frac > 0) {
    const Scalar end = values[full] + frac * (values[full + 1] - values[full]);
    integral += frac * dt * (values[full] + end) / 2;
  }
  return integral / (static_cast<Scalar>(full) * dt + frac * dt);
}

}  // namespace socdpt
