#pragma once

namespace socdpt {

/// One classical Runge-Kutta step for an autonomous system y' = f(y).
template <typename Vector, typename Scalar, typename Rhs>
Vector rk4_step(const Vector& y, Scalar dt, Rhs&& f) {
  const Vector k1 = f(y);
  const Vector k2 = f(Vector(y + (dt / 2) * k1));
  const Vector k3 = f(Vector(y + (dt / 2) * k2));
  const Vector k4 = f(Vector(y + dt * k3));
  return y + (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
}

}  // namespace socdpt
