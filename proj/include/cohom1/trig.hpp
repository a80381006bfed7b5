#pragma once

#include <cmath>
#include <numbers>

namespace cohom1 {

template <typename Scalar>
inline constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

/// Reduces x to [-pi, pi] before evaluation so that large k t keeps its
/// absolute accuracy.
template <typename Scalar>
Scalar reduce_angle(Scalar x) {
  using std::remainder;
  return remainder(x, 2 * kPi<Scalar>);
}

template <typename Scalar>
Scalar rsin(Scalar x) {
  using std::sin;
  return sin(reduce_angle(x));
}

template <typename Scalar>
Scalar rcos(Scalar x) {
  using std::cos;
  return cos(reduce_angle(x));
}

template <typename Scalar>
Scalar rcot(Scalar x) {
  return rcos(x) / rsin(x);
}

/// Distance from t to the nearest point of step * Z.
template <typename Scalar>
Scalar distance_to_lattice(Scalar t, Scalar step) {
  using std::abs;
  using std::remainder;
  return abs(remainder(t, step));
}

}  // namespace cohom1
