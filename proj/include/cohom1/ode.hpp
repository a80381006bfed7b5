#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "cohom1/actions.hpp"
#include "cohom1/error.hpp"
#include "cohom1/trig.hpp"

namespace cohom1 {

inline constexpr double kDefaultPoleMargin = 1e-8;

/// The (G, M0, M1, k) singular boundary value problem on [0, pi/G] with
/// r -> 0 at the left end and r -> k pi/G at the right end.
struct BvpSpec {
  int G = 1;
  int M0 = 1;
  int M1 = 1;
  int k = 1;

  double length() const noexcept { return kPi<double> / G; }
  double target() const noexcept { return k * length(); }
  /// Natural magnitude of the ODE coefficients, 4 G (M0 + M1) (1 + |k|).
  double scale() const noexcept;
  std::string label() const;

  friend bool operator==(const BvpSpec&, const BvpSpec&) = default;
};

BvpSpec make_bvp(int G, int M0, int M1, int k);
/// The BVP governing the k-maps of `action` (G = 2g for SO(n+2)).
BvpSpec bvp_for(const ActionDescriptor& action, int k);

template <typename Scalar = double>
struct TensionSample {
  Scalar t{};
  Scalar r{};
  Scalar rdot{};
  Scalar rddot{};
};

template <typename Scalar>
void require_regular(int G, Scalar t, double margin) {
  const Scalar step = kPi<Scalar> / static_cast<Scalar>(G);
  if (distance_to_lattice(t, step) < static_cast<Scalar>(margin)) {
    throw Error(ErrorCode::PoleProximity,
                "t=" + std::to_string(static_cast<double>(t)) + " is within " +
                    std::to_string(margin) + " of a singular point of the G=" +
                    std::to_string(G) + " equation");
  }
}

/// 4 sin^2(Gt) times the normal tension of a (k,r)-map; zero iff the normal
/// component vanishes at t.
template <typename Scalar>
Scalar closed_tension(const BvpSpec& spec, const TensionSample<Scalar>& s,
                      double margin = kDefaultPoleMargin) {
  require_regular(spec.G, s.t, margin);
  const Scalar G = spec.G;
  const Scalar sum = spec.M0 + spec.M1;
  const Scalar diff = spec.M0 - spec.M1;
  const Scalar sin_gt = rsin(G * s.t);
  const Scalar cos_gt = rcos(G * s.t);
  const Scalar sin_2gt = rsin(2 * G * s.t);
  const Scalar phase = 2 * (s.r - s.t);
  return 4 * sin_gt * sin_gt * s.rddot + (G * sum * sin_2gt + 2 * G * diff * sin_gt) * s.rdot -
         G * (G - 2) * rsin(phase) * (sum + diff * cos_gt) -
         2 * G * rsin(phase + G * s.t) * (sum * cos_gt + diff);
}

/// Equal-multiplicity form; identically closed_tension / 2.
template <typename Scalar>
Scalar closed_tension_equal_m(const BvpSpec& spec, const TensionSample<Scalar>& s,
                              double margin = kDefaultPoleMargin) {
  if (spec.M0 != spec.M1) {
    throw Error(ErrorCode::UnequalMultiplicities, spec.label() + " has M0 != M1");
  }
  require_regular(spec.G, s.t, margin);
  const Scalar G = spec.G;
  const Scalar m = spec.M0;
  const Scalar sin_gt = rsin(G * s.t);
  return 2 * sin_gt * sin_gt * s.rddot + m * G * rsin(2 * G * s.t) * s.rdot -
         m * G * ((G - 1) * rsin(2 * (s.r - s.t)) + rsin(2 * (s.r + (G - 1) * s.t)));
}

/// Normal tension as the unsimplified sums over the g curvature directions,
/// with multiplicities alternating m0, m1, m0, ...
template <typename Scalar>
Scalar raw_tension_sphere(int g, int m0, int m1, const TensionSample<Scalar>& s,
                          double margin = kDefaultPoleMargin) {
  if (g < 1) throw Error(ErrorCode::InvalidArgument, "g must be positive");
  require_regular(g, s.t, margin);
  const Scalar step = kPi<Scalar> / static_cast<Scalar>(g);
  Scalar cot_sum = 0;
  Scalar sin_sum = 0;
  for (int i = 0; i < g; ++i) {
    const Scalar m = (i % 2 == 0) ? m0 : m1;
    const Scalar shift = static_cast<Scalar>(i) * step;
    const Scalar sin_ti = rsin(s.t - shift);
    cot_sum += m * rcos(s.t - shift) / sin_ti;
    sin_sum += m * rsin(2 * (s.r - shift)) / (sin_ti * sin_ti);
  }
  return s.rddot + cot_sum * s.rdot - sin_sum / 2;
}

/// Twice the normal tension of the reparametrized lifted map on SO(n+2).
/// This is the sphere expression with 2g terms at step pi/(2g).
template <typename Scalar>
Scalar raw_tension_so(int g, int m0, int m1, const TensionSample<Scalar>& s,
                      double margin = kDefaultPoleMargin) {
  return raw_tension_sphere(2 * g, m0, m1, s, margin);
}

/// r'' as a function of (t, r, r'), solving closed_tension = 0.
class Rhs {
 public:
  explicit Rhs(const BvpSpec& spec, double margin = kDefaultPoleMargin)
      : spec_(spec), margin_(margin) {}

  double operator()(double t, double r, double rdot) const;

  const BvpSpec& spec() const noexcept { return spec_; }
  double margin() const noexcept { return margin_; }

 private:
  BvpSpec spec_;
  double margin_;
};

inline Rhs rhs(const BvpSpec& spec, double margin = kDefaultPoleMargin) {
  return Rhs(spec, margin);
}

struct ProfileSample {
  double t = 0;
  double r = 0;
  double rdot = 0;
};

struct ResidualReport {
  double max_abs = 0;
  /// |extrapolated r(0)| and |extrapolated r(pi/G) - k pi/G|.
  std::array<double, 2> boundary_err{0, 0};
};

/// Residual of a sampled profile: closed_tension with r'' from centered
/// differences of r' on the (possibly non-uniform) grid.
ResidualReport residual_norm(const BvpSpec& spec, std::span<const ProfileSample> samples,
                             double margin = kDefaultPoleMargin);

/// Second-order derivative estimate of `values` on the grid `t`.
std::vector<double> finite_difference_derivative(std::span<const double> t,
                                                 std::span<const double> values);

}  // namespace cohom1
