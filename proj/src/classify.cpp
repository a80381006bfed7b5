#include "cohom1/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cohom1 {

bool is_linear_solution(int G, int M0, int M1, int k) {
  if (k == 1) return true;
  // For G = 1, M0 = M1 the map r = -t is the reflection, an isometry.
  if (k == -1 && (G == 2 || (G == 1 && M0 == M1))) return true;
  return M0 == M1 && k == 1 - G;
}

double linear_residual_oracle(int G, int M0, int M1, int k, int samples) {
  if (samples < 16) throw Error(ErrorCode::InvalidArgument, "oracle needs at least 16 samples");
  const BvpSpec spec = make_bvp(G, M0, M1, k);
  const double L = spec.length();
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const double node = std::cos((2.0 * i + 1.0) * kPi<double> / (2.0 * samples));
    const double t = 0.5 * L * (1.0 - node);
    const TensionSample<double> s{t, k * t, static_cast<double>(k), 0.0};
    worst = std::max(worst, std::abs(closed_tension(spec, s)));
  }
  return worst;
}

double pinch_point_residual(int G, int M0, int M1, int k) {
  const BvpSpec spec = make_bvp(G, M0, M1, k);
  const double t = M0 == M1 ? kPi<double> / (4.0 * G) : kPi<double> / (2.0 * G);
  return std::abs(closed_tension(spec, TensionSample<double>{t, k * t, static_cast<double>(k), 0.0}));
}

namespace {

bool stated_rule(const ActionDescriptor& a, int k) {
  switch (a.space) {
    case Space::Sphere:
      return k == 1 || (a.g <= 2 && k == -1) || (a.m0 == a.m1 && k == 1 - a.g);
    case Space::OrthogonalGroup:
      return k == 1 || (a.m0 == a.m1 && k == 1 - 2 * a.g);
    case Space::Sp2Lift:
      return k == 1 || k == -5;
  }
  return false;
}

}  // namespace

HarmonicityVerdict is_harmonic_k_map(const ActionDescriptor& action, int j) {
  HarmonicityVerdict v;
  v.action = action;
  v.j = j;
  v.k = admissible_k(action, j);
  v.degree = degree_of_k_map(action, j);
  const Tangential tangential = tangential_vanishes(action);
  v.tangential = v.k == 1 ? Tangential::TriviallyIdentity : tangential;
  v.is_linear_solution = is_linear_solution(action.effective_g(), action.m0, action.m1, v.k);
  v.harmonic = stated_rule(action, v.k);

  const bool composed = v.is_linear_solution && v.tangential != Tangential::Unresolved;
  if (composed != v.harmonic) {
    throw std::logic_error("harmonicity rule and (linear solution, tangential) disagree for " +
                           action.label() + " k=" + std::to_string(v.k));
  }

  if (v.k == 1) {
    v.reason = "identity-map";
  } else if (v.harmonic) {
    v.reason = "linear-solution,tangential-vanishing";
  } else if (!v.is_linear_solution) {
    v.reason = "no-linear-solution";
  } else {
    v.reason = "tangential-unresolved";
  }
  return v;
}

std::vector<HarmonicityVerdict> classify_range(const ActionDescriptor& action, int jmin, int jmax) {
  std::vector<HarmonicityVerdict> out;
  for (int j = jmin; j <= jmax; ++j) {
    if (j % 2 != 0 && !action.odd_j_allowed) continue;
    out.push_back(is_harmonic_k_map(action, j));
  }
  return out;
}

std::vector<HarmonicityVerdict> examples_table() {
  std::vector<HarmonicityVerdict> out;
  auto add = [&out](Space space, int g, int m, int j) {
    out.push_back(is_harmonic_k_map(make_action(space, g, m, m), j));
  };
  for (int m = 1; m <= 6; ++m) add(Space::OrthogonalGroup, 2, m, -2);
  for (int m : {1, 2, 4, 8}) add(Space::OrthogonalGroup, 3, m, -2);
  for (int m : {1, 2}) add(Space::OrthogonalGroup, 4, m, -2);
  for (int m : {1, 2}) add(Space::OrthogonalGroup, 6, m, -2);
  add(Space::Sp2Lift, 6, 1, -1);
  return out;
}

}  // namespace cohom1
