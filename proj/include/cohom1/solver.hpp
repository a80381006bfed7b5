#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "cohom1/ode.hpp"

namespace cohom1 {

struct ShootingConfig {
  double eps0 = 1e-5;  ///< start offset from t = 0
  double eps1 = 1e-5;  ///< start offset from t = pi/G
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::optional<double> match_point;               ///< default pi/(2G)
  std::optional<std::array<double, 2>> bracket;    ///< default [-4|k|-4, 4|k|+4]
  int sweep_points = 512;
  int max_newton = 50;
  double blowup_cap = 1e6;
  int dense_points = 257;

  double match_point_for(const BvpSpec& spec) const;
  std::array<double, 2> bracket_for(const BvpSpec& spec) const;
  /// Throws InvalidArgument when an invariant fails for this spec.
  void validate(const BvpSpec& spec) const;
};

enum class Endpoint { Left, Right };

/// Starting data one offset away from a singular endpoint, from the odd
/// expansion r = a t + c t^3 (left) or r = k pi/G - b s + c s^3 with
/// s = pi/G - t (right).
struct SeriesStart {
  double t = 0;
  double r = 0;
  double rdot = 0;
  double cubic = 0;
};

SeriesStart series_start(const BvpSpec& spec, Endpoint endpoint, double slope, double eps);

struct ShootGaps {
  double value_gap = 0;  ///< r_left - r_right at the match point
  double deriv_gap = 0;  ///< r'_left - r'_right at the match point
};

ShootGaps shoot(const BvpSpec& spec, const ShootingConfig& config, double a, double b);

struct SolutionProfile {
  BvpSpec spec;
  std::vector<ProfileSample> samples;
  double slope0 = 0;
  double slope1 = 0;
  std::array<double, 2> match_gap{0, 0};
  double residual = 0;
  std::array<double, 2> boundary_err{0, 0};
  int iterations = 0;
};

/// Damped Newton on (a, b) -> shoot gaps; throws NoConvergence or
/// TrajectoryEscaped.
SolutionProfile solve(const BvpSpec& spec, const ShootingConfig& config,
                      std::optional<std::array<double, 2>> init = std::nullopt);

enum class SweepStatus { Ok, Escaped, Failed };

struct SweepPoint {
  double a = 0;
  /// Extrapolated r(pi/G) - k pi/G; +-inf for escaped trajectories (sign of r).
  double gap = 0;
  /// Gap sign differs from the previous grid point.
  bool sign_change = false;
  SweepStatus status = SweepStatus::Ok;
  double end_slope = 0;  ///< r' at pi/G - eps1 when status is Ok
};

/// Single-ended sweep of the left slope over the bracket grid. Grid points
/// are independent and are evaluated on up to `threads` threads; the result
/// is ordered by a.
std::vector<SweepPoint> sweep(const BvpSpec& spec, const ShootingConfig& config, int threads = 1);

/// Consecutive sweep points whose gaps change sign.
std::vector<std::pair<SweepPoint, SweepPoint>> sign_change_brackets(
    const std::vector<SweepPoint>& points);

/// Refines every bracket by bisection on the single-ended gap, then runs
/// solve from the bisected slopes. Brackets that fail to converge are
/// dropped. Profiles come back ordered by |slope0 - k|.
std::vector<SolutionProfile> solve_brackets(const BvpSpec& spec, const ShootingConfig& config,
                                            const std::vector<SweepPoint>& points);

}  // namespace cohom1
