#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "cohom1/error.hpp"

namespace cohom1 {

struct StepControl {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double blowup_cap = 1e6;
  long max_steps = 2'000'000;
};

/// Dormand-Prince 5(4) with local extrapolation and elementary step control,
/// for a two-dimensional first-order system y' = f(t, y).
///
/// The integrator keeps its state between calls to advance_to(), so a
/// trajectory can be sampled on an output grid without restarting the step
/// size sequence. Integration runs in either direction.
template <typename Scalar, typename System>
class DormandPrince45 {
 public:
  using State = Eigen::Matrix<Scalar, 2, 1>;

  DormandPrince45(System f, Scalar t0, const State& y0, const StepControl& control)
      : f_(std::move(f)), t_(t0), y_(y0), control_(control) {}

  Scalar t() const noexcept { return t_; }
  const State& y() const noexcept { return y_; }
  long steps() const noexcept { return steps_; }

  void advance_to(Scalar target) {
    const Scalar span = target - t_;
    if (span == 0) return;
    const Scalar dir = span > 0 ? 1 : -1;
    if (h_ == 0 || (h_ > 0) != (dir > 0)) h_ = dir * initial_step(std::abs(span));

    State k1 = f_(t_, y_);
    while ((target - t_) * dir > 0) {
      if (++steps_ > control_.max_steps) {
        throw Error(ErrorCode::IntegratorStall,
                    "step budget exhausted at t=" + std::to_string(static_cast<double>(t_)));
      }
      bool last = false;
      Scalar h = h_;
      if ((t_ + h - target) * dir >= 0) {
        h = target - t_;
        last = true;
      }
      const Scalar h_floor =
          16 * std::numeric_limits<Scalar>::epsilon() * std::max<Scalar>(1, std::abs(t_));
      if (std::abs(h) < h_floor && !last) {
        throw Error(ErrorCode::IntegratorStall,
                    "step size underflow at t=" + std::to_string(static_cast<double>(t_)));
      }

      const State k2 = f_(t_ + h * c2, y_ + h * (a21 * k1));
      const State k3 = f_(t_ + h * c3, y_ + h * (a31 * k1 + a32 * k2));
      const State k4 = f_(t_ + h * c4, y_ + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const State k5 = f_(t_ + h * c5, y_ + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const State k6 =
          f_(t_ + h, y_ + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const State y_new = y_ + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const State k7 = f_(t_ + h, y_new);
      const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      Scalar norm = 0;
      for (int i = 0; i < 2; ++i) {
        const Scalar sc = control_.abs_tol +
                          control_.rel_tol * std::max(std::abs(y_(i)), std::abs(y_new(i)));
        norm += (err(i) / sc) * (err(i) / sc);
      }
      norm = std::sqrt(norm / 2);

      if (!std::isfinite(static_cast<double>(norm))) {
        h_ = h / 4;
        continue;
      }
      if (norm <= 1) {
        t_ = last ? target : t_ + h;
        y_ = y_new;
        k1 = k7;
        if (!(std::abs(y_(0)) <= control_.blowup_cap && std::abs(y_(1)) <= control_.blowup_cap)) {
          throw TrajectoryEscaped(static_cast<double>(t_), static_cast<double>(y_(0)),
                                  static_cast<double>(y_(1)));
        }
        const Scalar grow = norm == 0 ? 5 : std::min<Scalar>(5, 0.9 * std::pow(norm, -0.2));
        // Keep the unclipped step when the last step was shortened to hit the target.
        h_ = last ? std::max(std::abs(h_), std::abs(h) * grow) * dir : h * grow;
      } else {
        h_ = h * std::max<Scalar>(0.2, 0.9 * std::pow(norm, -0.2));
      }
    }
  }

 private:
  Scalar initial_step(Scalar span) {
    const State f0 = f_(t_, y_);
    Scalar d0 = 0, d1 = 0;
    for (int i = 0; i < 2; ++i) {
      const Scalar sc = control_.abs_tol + control_.rel_tol * std::abs(y_(i));
      d0 += (y_(i) / sc) * (y_(i) / sc);
      d1 += (f0(i) / sc) * (f0(i) / sc);
    }
    d0 = std::sqrt(d0 / 2);
    d1 = std::sqrt(d1 / 2);
    Scalar h = (d0 < 1e-5 || d1 < 1e-5) ? Scalar(1e-6) : Scalar(0.01) * d0 / d1;
    // The singular endpoints make |f| ~ 1/t, so the scale of t itself is a
    // safe upper bound as well.
    h = std::min({h, span, std::max<Scalar>(Scalar(1e-3) * std::abs(t_), Scalar(1e-12))});
    return std::max<Scalar>(h, Scalar(1e-14) * std::max<Scalar>(1, std::abs(t_)));
  }

  static constexpr Scalar c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr Scalar a21 = 1.0 / 5;
  static constexpr Scalar a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr Scalar a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr Scalar a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr Scalar a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr Scalar b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr Scalar e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  System f_;
  Scalar t_;
  State y_;
  StepControl control_;
  Scalar h_ = 0;
  long steps_ = 0;
};

template <typename Scalar, typename System>
auto make_dormand_prince(System f, Scalar t0, const Eigen::Matrix<Scalar, 2, 1>& y0,
                         const StepControl& control) {
  return DormandPrince45<Scalar, System>(std::move(f), t0, y0, control);
}

}  // namespace cohom1
