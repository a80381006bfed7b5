#include "cohom1/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace cohom1 {

double BvpSpec::scale() const noexcept {
  return 4.0 * G * (M0 + M1) * (1.0 + std::abs(k));
}

std::string BvpSpec::label() const {
  return "(" + std::to_string(G) + "," + std::to_string(M0) + "," + std::to_string(M1) + "," +
         std::to_string(k) + ")";
}

BvpSpec make_bvp(int G, int M0, int M1, int k) {
  if (G < 1 || M0 < 1 || M1 < 1) {
    throw Error(ErrorCode::InvalidArgument, "G, M0, M1 must be positive");
  }
  return BvpSpec{G, M0, M1, k};
}

BvpSpec bvp_for(const ActionDescriptor& action, int k) {
  return make_bvp(action.effective_g(), action.m0, action.m1, k);
}

double Rhs::operator()(double t, double r, double rdot) const {
  require_regular(spec_.G, t, margin_);
  const double G = spec_.G;
  const double sum = spec_.M0 + spec_.M1;
  const double diff = spec_.M0 - spec_.M1;
  const double sin_gt = rsin(G * t);
  const double cos_gt = rcos(G * t);
  const double phase = 2 * (r - t);
  const double forcing = G * (G - 2) * rsin(phase) * (sum + diff * cos_gt) +
                         2 * G * rsin(phase + G * t) * (sum * cos_gt + diff);
  const double damping = (G * sum * rsin(2 * G * t) + 2 * G * diff * sin_gt) * rdot;
  return (forcing - damping) / (4 * sin_gt * sin_gt);
}

std::vector<double> finite_difference_derivative(std::span<const double> t,
                                                 std::span<const double> v) {
  const std::size_t n = t.size();
  if (n < 3 || v.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "need at least 3 matching samples");
  }
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = t[i] - t[i - 1];
    const double h2 = t[i + 1] - t[i];
    d[i] = -h2 / (h1 * (h1 + h2)) * v[i - 1] + (h2 - h1) / (h1 * h2) * v[i] +
           h1 / (h2 * (h1 + h2)) * v[i + 1];
  }
  {
    const double h1 = t[1] - t[0];
    const double h2 = t[2] - t[1];
    d[0] = -(2 * h1 + h2) / (h1 * (h1 + h2)) * v[0] + (h1 + h2) / (h1 * h2) * v[1] -
           h1 / (h2 * (h1 + h2)) * v[2];
  }
  {
    const double h1 = t[n - 2] - t[n - 3];
    const double h2 = t[n - 1] - t[n - 2];
    d[n - 1] = h2 / (h1 * (h1 + h2)) * v[n - 3] - (h1 + h2) / (h1 * h2) * v[n - 2] +
               (2 * h2 + h1) / (h2 * (h1 + h2)) * v[n - 1];
  }
  return d;
}

ResidualReport residual_norm(const BvpSpec& spec, std::span<const ProfileSample> samples,
                             double margin) {
  const double L = spec.length();
  const auto interior = std::count_if(samples.begin(), samples.end(), [L](const ProfileSample& s) {
    return s.t > 0 && s.t < L;
  });
  if (interior < 16 || static_cast<std::size_t>(interior) != samples.size()) {
    throw Error(ErrorCode::ProfileTooCoarse,
                "need at least 16 samples, all strictly inside (0, pi/G); got " +
                    std::to_string(interior) + " of " + std::to_string(samples.size()));
  }
  std::vector<double> t(samples.size());
  std::vector<double> rdot(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    t[i] = samples[i].t;
    rdot[i] = samples[i].rdot;
    if (i > 0 && !(t[i] > t[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "profile samples must be strictly increasing in t");
    }
  }
  const auto rddot = finite_difference_derivative(t, rdot);

  ResidualReport report;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const TensionSample<double> s{samples[i].t, samples[i].r, samples[i].rdot, rddot[i]};
    report.max_abs = std::max(report.max_abs, std::abs(closed_tension(spec, s, margin)));
  }
  const ProfileSample& first = samples.front();
  const ProfileSample& last = samples.back();
  report.boundary_err[0] = std::abs(first.r - first.rdot * first.t);
  report.boundary_err[1] = std::abs(last.r + last.rdot * (L - last.t) - spec.target());
  return report;
}

}  // namespace cohom1
