#pragma once

#include <cstdint>
#include <string>

#include "cohom1/error.hpp"
#include "cohom1/trig.hpp"

namespace cohom1 {

/// Both sides of a trigonometric identity evaluated at one point.
template <typename Scalar>
struct IdentityValues {
  Scalar lhs{};
  Scalar rhs{};
};

template <typename Scalar = double>
struct IdentitySample {
  int g = 1;
  Scalar r{};
  Scalar t{};
};

namespace detail {

inline void require_positive_g(int g) {
  if (g < 1) throw Error(ErrorCode::InvalidArgument, "g must be >= 1, got " + std::to_string(g));
}

template <typename Scalar>
void require_regular_identity(int g, Scalar t, double margin) {
  const Scalar step = kPi<Scalar> / static_cast<Scalar>(g);
  if (distance_to_lattice(t, step) < static_cast<Scalar>(margin)) {
    throw Error(ErrorCode::PoleProximity, "t=" + std::to_string(static_cast<double>(t)) +
                                              " is too close to (pi/" + std::to_string(g) + ")Z");
  }
}

}  // namespace detail

/// sum_i sin^2(r - i pi/g) / sin^2(t - i pi/g) * sin^2(g t)
///   = g ((g-1) sin^2(r-t) + sin^2(r + (g-1) t))
template <typename Scalar>
IdentityValues<Scalar> lemma_sin_sq(const IdentitySample<Scalar>& s, double margin = 1e-8) {
  detail::require_positive_g(s.g);
  detail::require_regular_identity(s.g, s.t, margin);
  const int g = s.g;
  const Scalar step = kPi<Scalar> / static_cast<Scalar>(g);
  const Scalar sin_gt = rsin(static_cast<Scalar>(g) * s.t);
  Scalar sum = 0;
  for (int i = 0; i < g; ++i) {
    const Scalar num = rsin(s.r - static_cast<Scalar>(i) * step);
    const Scalar den = rsin(s.t - static_cast<Scalar>(i) * step);
    sum += (num * num) / (den * den);
  }
  const Scalar a = rsin(s.r - s.t);
  const Scalar b = rsin(s.r + static_cast<Scalar>(g - 1) * s.t);
  return {sum * sin_gt * sin_gt, static_cast<Scalar>(g) * (static_cast<Scalar>(g - 1) * a * a + b * b)};
}

/// The r-derivative of lemma_sin_sq:
/// sum_i sin 2(r - i pi/g) / sin^2(t - i pi/g) * sin^2(g t)
///   = g ((g-1) sin 2(r-t) + sin 2(r + (g-1) t))
template <typename Scalar>
IdentityValues<Scalar> lemma_sin_2r(const IdentitySample<Scalar>& s, double margin = 1e-8) {
  detail::require_positive_g(s.g);
  detail::require_regular_identity(s.g, s.t, margin);
  const int g = s.g;
  const Scalar step = kPi<Scalar> / static_cast<Scalar>(g);
  const Scalar sin_gt = rsin(static_cast<Scalar>(g) * s.t);
  Scalar sum = 0;
  for (int i = 0; i < g; ++i) {
    const Scalar shift = static_cast<Scalar>(i) * step;
    const Scalar den = rsin(s.t - shift);
    sum += rsin(2 * (s.r - shift)) / (den * den);
  }
  return {sum * sin_gt * sin_gt,
          static_cast<Scalar>(g) * (static_cast<Scalar>(g - 1) * rsin(2 * (s.r - s.t)) +
                                    rsin(2 * (s.r + static_cast<Scalar>(g - 1) * s.t)))};
}

/// g cot(g t) = sum_i cot(t - i pi/g)
template <typename Scalar>
IdentityValues<Scalar> cotangent_identity(int g, Scalar t, double margin = 1e-8) {
  detail::require_positive_g(g);
  detail::require_regular_identity(g, t, margin);
  const Scalar step = kPi<Scalar> / static_cast<Scalar>(g);
  Scalar sum = 0;
  for (int i = 0; i < g; ++i) sum += rcot(t - static_cast<Scalar>(i) * step);
  return {static_cast<Scalar>(g) * rcot(static_cast<Scalar>(g) * t), sum};
}

/// The alternating-multiplicity cotangent sum for even g, evaluated directly
/// (lhs) and through the half-period split (rhs):
/// sum_i m_i cot(t - i pi/g) = (g/2) ((m0+m1) cot(g t) + (m0-m1) / sin(g t)).
template <typename Scalar>
IdentityValues<Scalar> half_sum_split(int g, int m0, int m1, Scalar t, double margin = 1e-8) {
  detail::require_positive_g(g);
  if (g % 2 != 0) throw Error(ErrorCode::OddG, "half_sum_split needs even g, got " + std::to_string(g));
  detail::require_regular_identity(g, t, margin);
  const Scalar step = kPi<Scalar> / static_cast<Scalar>(g);
  Scalar direct = 0;
  for (int i = 0; i < g; ++i) {
    const Scalar m = (i % 2 == 0) ? m0 : m1;
    direct += m * rcot(t - static_cast<Scalar>(i) * step);
  }
  const Scalar gt = static_cast<Scalar>(g) * t;
  const Scalar split = static_cast<Scalar>(g) / 2 *
                       (static_cast<Scalar>(m0 + m1) * rcot(gt) +
                        static_cast<Scalar>(m0 - m1) / rsin(gt));
  return {direct, split};
}

/// |lhs - rhs| / (1 + |lhs|)
template <typename Scalar>
Scalar mixed_deviation(const IdentityValues<Scalar>& v) {
  using std::abs;
  return abs(v.lhs - v.rhs) / (1 + abs(v.lhs));
}

struct IdentitySuiteConfig {
  int g_max = 12;
  int samples = 10000;
  std::uint64_t seed = 20240607;
  double margin = 1e-3;  ///< pole margin for sampled t
};

/// Maximum mixed deviation per identity over seeded random samples with
/// g in [1, g_max] (even g only for half_sum_split) and r, t in (0, pi).
struct IdentitySuiteReport {
  double lemma_sin_sq = 0;
  double lemma_sin_2r = 0;
  double cotangent = 0;
  double half_sum_split = 0;
  int samples = 0;
  double max() const;
};

IdentitySuiteReport run_identity_suite(const IdentitySuiteConfig& config);

}  // namespace cohom1
