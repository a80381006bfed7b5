#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cohom1 {

enum class ErrorCode {
  InvalidTriple,
  InvalidSpace,
  InvalidArgument,
  InadmissibleJ,
  PoleProximity,
  UnequalMultiplicities,
  OddG,
  ProfileTooCoarse,
  SingularStart,
  TrajectoryEscaped,
  IntegratorStall,
  NoConvergence,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure reported by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A trajectory left the box |r|, |rdot| <= blowup_cap.
class TrajectoryEscaped : public Error {
 public:
  TrajectoryEscaped(double t, double r, double rdot)
      : Error(ErrorCode::TrajectoryEscaped,
              "trajectory escaped at t=" + std::to_string(t)),
        t_(t), r_(r), rdot_(rdot) {}

  double time() const noexcept { return t_; }
  double r() const noexcept { return r_; }
  double rdot() const noexcept { return rdot_; }

 private:
  double t_, r_, rdot_;
};

/// Newton refinement of the shooting slopes did not reach the tolerance.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& why, double a, double b, double value_gap, double deriv_gap,
                int iterations)
      : Error(ErrorCode::NoConvergence, why),
        a_(a), b_(b), value_gap_(value_gap), deriv_gap_(deriv_gap), iterations_(iterations) {}

  double slope0() const noexcept { return a_; }
  double slope1() const noexcept { return b_; }
  double value_gap() const noexcept { return value_gap_; }
  double deriv_gap() const noexcept { return deriv_gap_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double a_, b_, value_gap_, deriv_gap_;
  int iterations_;
};

}  // namespace cohom1
