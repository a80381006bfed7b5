#include "cohom1/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <tuple>

#include "cohom1/integrator.hpp"

namespace cohom1 {
namespace {

using Vec2 = Eigen::Vector2d;

double solver_margin(const ShootingConfig& config) {
  return std::min(kDefaultPoleMargin, 0.25 * std::min(config.eps0, config.eps1));
}

StepControl step_control(const ShootingConfig& config) {
  StepControl c;
  c.rel_tol = config.rel_tol;
  c.abs_tol = config.abs_tol;
  c.blowup_cap = config.blowup_cap;
  return c;
}

auto first_order_system(const Rhs& f) {
  return [&f](double t, const Vec2& y) -> Vec2 { return Vec2(y(1), f(t, y(0), y(1))); };
}

// The linear part cancels at leading order, so the closed form must be O(eps)
// at a series start; anything larger means the endpoint expansion is wrong
// for this (spec, slope).
void check_start(const BvpSpec& spec, const SeriesStart& s, double eps, double margin) {
  const double rddot = 6 * s.cubic * eps;
  const double value = closed_tension(spec, TensionSample<double>{s.t, s.r, s.rdot, rddot}, margin);
  const double bound = 10 * eps * spec.scale() * (1 + std::abs(s.rdot));
  if (!(std::abs(value) <= bound)) {
    throw Error(ErrorCode::SingularStart,
                spec.label() + ": series start at t=" + std::to_string(s.t) +
                    " leaves residual " + std::to_string(value) + " (bound " +
                    std::to_string(bound) + ")");
  }
}

struct Terminal {
  SweepStatus status = SweepStatus::Ok;
  double gap = 0;
  double end_slope = 0;
};

Terminal terminal_gap(const BvpSpec& spec, const ShootingConfig& config, const Rhs& f, double a) {
  Terminal out;
  try {
    const SeriesStart s = series_start(spec, Endpoint::Left, a, config.eps0);
    auto integ = make_dormand_prince(first_order_system(f), s.t, Vec2(s.r, s.rdot),
                                     step_control(config));
    integ.advance_to(spec.length() - config.eps1);
    out.end_slope = integ.y()(1);
    out.gap = integ.y()(0) + integ.y()(1) * config.eps1 - spec.target();
  } catch (const TrajectoryEscaped& e) {
    out.status = SweepStatus::Escaped;
    out.gap = std::copysign(std::numeric_limits<double>::infinity(), e.r());
  } catch (const Error&) {
    out.status = SweepStatus::Failed;
    out.gap = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

bool opposite_signs(double x, double y) {
  return !std::isnan(x) && !std::isnan(y) && ((x < 0 && y > 0) || (x > 0 && y < 0));
}

}  // namespace

double ShootingConfig::match_point_for(const BvpSpec& spec) const {
  return match_point.value_or(spec.length() / 2);
}

std::array<double, 2> ShootingConfig::bracket_for(const BvpSpec& spec) const {
  if (bracket) return *bracket;
  const double w = 4.0 * std::abs(spec.k) + 4.0;
  return {-w, w};
}

void ShootingConfig::validate(const BvpSpec& spec) const {
  const double quarter = spec.length() / 4;
  if (!(eps0 > 0 && eps0 < quarter && eps1 > 0 && eps1 < quarter)) {
    throw Error(ErrorCode::InvalidArgument, "eps0 and eps1 must lie in (0, pi/(4G))");
  }
  if (!(rel_tol > 0 && abs_tol > 0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
  }
  const double tm = match_point_for(spec);
  if (!(tm > eps0 && tm < spec.length() - eps1)) {
    throw Error(ErrorCode::InvalidArgument, "match point must lie between the two starts");
  }
  const auto br = bracket_for(spec);
  if (!(br[0] < br[1])) throw Error(ErrorCode::InvalidArgument, "bracket must be nonempty");
  if (sweep_points < 2 || max_newton < 1 || dense_points < 17 || !(blowup_cap > 0)) {
    throw Error(ErrorCode::InvalidArgument, "sweep_points, max_newton, dense_points out of range");
  }
}

SeriesStart series_start(const BvpSpec& spec, Endpoint endpoint, double slope, double eps) {
  const Rhs f(spec, std::min(kDefaultPoleMargin, 0.25 * eps));
  const double tau = 2 * eps;
  const double L = spec.length();
  const double T = spec.target();

  // residual(c) is affine in c to leading order; two evaluations fix its root.
  auto residual = [&](double c) {
    if (endpoint == Endpoint::Left) {
      return f(tau, slope * tau + c * tau * tau * tau, slope + 3 * c * tau * tau) - 6 * c * tau;
    }
    return f(L - tau, T - slope * tau + c * tau * tau * tau, slope - 3 * c * tau * tau) -
           6 * c * tau;
  };
  const double probe = 1.0 + std::abs(slope);
  const double r0 = residual(0.0);
  const double r1 = residual(probe);
  const double denom = r1 - r0;
  const double c = (denom != 0 && std::isfinite(denom)) ? -r0 * probe / denom : 0.0;

  SeriesStart s;
  s.cubic = c;
  if (endpoint == Endpoint::Left) {
    s.t = eps;
    s.r = slope * eps + c * eps * eps * eps;
    s.rdot = slope + 3 * c * eps * eps;
  } else {
    s.t = L - eps;
    s.r = T - slope * eps + c * eps * eps * eps;
    s.rdot = slope - 3 * c * eps * eps;
  }
  return s;
}

ShootGaps shoot(const BvpSpec& spec, const ShootingConfig& config, double a, double b) {
  config.validate(spec);
  const double margin = solver_margin(config);
  const Rhs f(spec, margin);
  const double tm = config.match_point_for(spec);

  const SeriesStart left = series_start(spec, Endpoint::Left, a, config.eps0);
  const SeriesStart right = series_start(spec, Endpoint::Right, b, config.eps1);
  check_start(spec, left, config.eps0, margin);
  check_start(spec, right, config.eps1, margin);

  auto fwd = make_dormand_prince(first_order_system(f), left.t, Vec2(left.r, left.rdot),
                                 step_control(config));
  fwd.advance_to(tm);
  auto bwd = make_dormand_prince(first_order_system(f), right.t, Vec2(right.r, right.rdot),
                                 step_control(config));
  bwd.advance_to(tm);
  return {fwd.y()(0) - bwd.y()(0), fwd.y()(1) - bwd.y()(1)};
}

SolutionProfile solve(const BvpSpec& spec, const ShootingConfig& config,
                      std::optional<std::array<double, 2>> init) {
  config.validate(spec);
  const double tol = 1e-9 * (1.0 + std::abs(spec.k));

  auto gaps = [&](const Vec2& x) {
    const ShootGaps g = shoot(spec, config, x(0), x(1));
    return Vec2(g.value_gap, g.deriv_gap);
  };

  auto jacobian = [&](const Vec2& x, const Vec2& F) {
    Eigen::Matrix2d J;
    for (int i = 0; i < 2; ++i) {
      Vec2 xh = x;
      const double h = 1e-6 * (1.0 + std::abs(x(i)));
      xh(i) += h;
      J.col(i) = (gaps(xh) - F) / h;
    }
    return J;
  };

  Vec2 x = init ? Vec2((*init)[0], (*init)[1]) : Vec2(spec.k, spec.k);
  Vec2 F = gaps(x);
  int iterations = 0;
  while (F.norm() > tol) {
    if (iterations >= config.max_newton) {
      throw NoConvergence("iteration cap reached", x(0), x(1), F(0), F(1), iterations);
    }
    ++iterations;

    const Eigen::FullPivLU<Eigen::Matrix2d> lu(jacobian(x, F));
    if (!lu.isInvertible()) {
      throw NoConvergence("singular shooting Jacobian", x(0), x(1), F(0), F(1), iterations);
    }
    const Vec2 step = lu.solve(-F);

    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 20; ++halving, lambda /= 2) {
      const Vec2 trial = x + lambda * step;
      Vec2 Ft;
      try {
        Ft = gaps(trial);
      } catch (const TrajectoryEscaped&) {
        continue;
      }
      if (Ft.allFinite() && Ft.norm() < F.norm()) {
        x = trial;
        F = Ft;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw NoConvergence("damped step failed to reduce the gap", x(0), x(1), F(0), F(1),
                          iterations);
    }
  }

  // Dense re-integration. The two pieces are blended with a C2 weight across
  // a window around the match point, so the remaining match gap does not
  // show up as a jump in r' on the output grid.
  const double margin = solver_margin(config);
  const Rhs f(spec, margin);
  const double tm = config.match_point_for(spec);
  const double t_lo = config.eps0;
  const double t_hi = spec.length() - config.eps1;
  const int n = std::max(config.dense_points, 257);
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) {
    grid[i] = i == n - 1 ? t_hi : t_lo + (t_hi - t_lo) * static_cast<double>(i) / (n - 1);
  }

  const SeriesStart left = series_start(spec, Endpoint::Left, x(0), config.eps0);
  const SeriesStart right = series_start(spec, Endpoint::Right, x(1), config.eps1);
  auto pieces = [&](double half) {
    std::vector<Vec2> lhs(n, Vec2::Constant(std::nan(""))), rhs_piece = lhs;
    auto fwd = make_dormand_prince(first_order_system(f), left.t, Vec2(left.r, left.rdot),
                                   step_control(config));
    for (int i = 0; i < n && grid[i] <= tm + half; ++i) {
      fwd.advance_to(grid[i]);
      lhs[i] = fwd.y();
    }
    auto bwd = make_dormand_prince(first_order_system(f), right.t, Vec2(right.r, right.rdot),
                                   step_control(config));
    for (int i = n - 1; i >= 0 && grid[i] >= tm - half; --i) {
      bwd.advance_to(grid[i]);
      rhs_piece[i] = bwd.y();
    }
    return std::pair(lhs, rhs_piece);
  };

  double half = 0.5 * std::min(tm - t_lo, t_hi - tm);
  std::vector<Vec2> yl, yr;
  try {
    std::tie(yl, yr) = pieces(half);
  } catch (const Error&) {
    half = 0;
    std::tie(yl, yr) = pieces(half);
  }

  SolutionProfile p;
  p.spec = spec;
  p.samples.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = grid[i];
    if (half == 0 || t <= tm - half || t >= tm + half) {
      const Vec2& y = (t <= tm) ? yl[i] : yr[i];
      p.samples[i] = {t, y(0), y(1)};
      continue;
    }
    const double s = (t - (tm - half)) / (2 * half);
    const double w = s * s * s * (10 + s * (6 * s - 15));
    const double dw = 30 * s * s * (1 - s) * (1 - s) / (2 * half);
    const Vec2 y = (1 - w) * yl[i] + w * yr[i];
    p.samples[i] = {t, y(0), y(1) + dw * (yr[i](0) - yl[i](0))};
  }

  p.slope0 = x(0);
  p.slope1 = x(1);
  p.match_gap = {F(0), F(1)};
  p.iterations = iterations;
  const ResidualReport report = residual_norm(spec, p.samples, margin);
  p.residual = report.max_abs;
  p.boundary_err = report.boundary_err;
  return p;
}

std::vector<SweepPoint> sweep(const BvpSpec& spec, const ShootingConfig& config, int threads) {
  config.validate(spec);
  const Rhs f(spec, solver_margin(config));
  const auto br = config.bracket_for(spec);
  const int n = config.sweep_points;
  std::vector<SweepPoint> points(n);

  auto work = [&](int begin, int stride) {
    for (int i = begin; i < n; i += stride) {
      const double a = br[0] + (br[1] - br[0]) * static_cast<double>(i) / (n - 1);
      const Terminal term = terminal_gap(spec, config, f, a);
      points[i] = SweepPoint{a, term.gap, false, term.status, term.end_slope};
    }
  };
  const int workers = std::clamp(threads, 1, n);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }

  for (int i = 1; i < n; ++i) {
    points[i].sign_change = opposite_signs(points[i - 1].gap, points[i].gap);
  }
  return points;
}

std::vector<std::pair<SweepPoint, SweepPoint>> sign_change_brackets(
    const std::vector<SweepPoint>& points) {
  std::vector<std::pair<SweepPoint, SweepPoint>> out;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].sign_change) out.emplace_back(points[i - 1], points[i]);
  }
  return out;
}

std::vector<SolutionProfile> solve_brackets(const BvpSpec& spec, const ShootingConfig& config,
                                            const std::vector<SweepPoint>& points) {
  const Rhs f(spec, solver_margin(config));
  std::vector<SolutionProfile> found;
  for (const auto& [lo_pt, hi_pt] : sign_change_brackets(points)) {
    double lo = lo_pt.a;
    double hi = hi_pt.a;
    double g_lo = lo_pt.gap;
    Terminal mid_term{};
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 60 && hi - lo > 1e-12 * (1 + std::abs(mid)); ++it) {
      mid = 0.5 * (lo + hi);
      mid_term = terminal_gap(spec, config, f, mid);
      if (mid_term.status == SweepStatus::Failed) break;
      if (opposite_signs(g_lo, mid_term.gap)) {
        hi = mid;
      } else {
        lo = mid;
        g_lo = mid_term.gap;
      }
    }
    if (mid_term.status == SweepStatus::Failed) continue;
    // The far slope is unknown when the bisected trajectory escapes; try the
    // measured end slope first, then the mirror guess b = a, then b = k.
    std::vector<double> far_guesses;
    if (mid_term.status == SweepStatus::Ok) far_guesses.push_back(mid_term.end_slope);
    far_guesses.push_back(mid);
    far_guesses.push_back(spec.k);
    for (double b : far_guesses) {
      try {
        SolutionProfile p = solve(spec, config, std::array<double, 2>{mid, b});
        const bool duplicate =
            std::any_of(found.begin(), found.end(), [&](const SolutionProfile& q) {
              return std::abs(q.slope0 - p.slope0) <= 1e-6 * (1 + std::abs(p.slope0));
            });
        if (!duplicate) found.push_back(std::move(p));
        break;
      } catch (const Error&) {
        // Escape discontinuities and failed refinements yield no profile.
      }
    }
  }
  std::sort(found.begin(), found.end(), [&](const SolutionProfile& a, const SolutionProfile& b) {
    return std::abs(a.slope0 - spec.k) < std::abs(b.slope0 - spec.k);
  });
  return found;
}

}  // namespace cohom1
