#include "cohom1/identities.hpp"

#include <algorithm>
#include <random>

namespace cohom1 {

double IdentitySuiteReport::max() const {
  return std::max({lemma_sin_sq, lemma_sin_2r, cotangent, half_sum_split});
}

IdentitySuiteReport run_identity_suite(const IdentitySuiteConfig& config) {
  if (config.g_max < 2 || config.samples < 1) {
    throw Error(ErrorCode::InvalidArgument, "identity suite needs g_max >= 2 and samples >= 1");
  }
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<int> pick_g(1, config.g_max);
  std::uniform_int_distribution<int> pick_half(1, config.g_max / 2);
  std::uniform_int_distribution<int> pick_m(1, 9);
  std::uniform_real_distribution<double> angle(0.0, kPi<double>);

  // Redraws t until it clears the poles of the given g.
  auto regular_t = [&](int g) {
    const double step = kPi<double> / g;
    double t = angle(rng);
    while (distance_to_lattice(t, step) < config.margin) t = angle(rng);
    return t;
  };

  IdentitySuiteReport rep;
  rep.samples = config.samples;
  for (int i = 0; i < config.samples; ++i) {
    const int g = pick_g(rng);
    const double r = angle(rng);
    const double t = regular_t(g);
    const IdentitySample<double> s{g, r, t};
    rep.lemma_sin_sq = std::max(rep.lemma_sin_sq, mixed_deviation(lemma_sin_sq(s, config.margin)));
    rep.lemma_sin_2r = std::max(rep.lemma_sin_2r, mixed_deviation(lemma_sin_2r(s, config.margin)));
    rep.cotangent = std::max(rep.cotangent, mixed_deviation(cotangent_identity(g, t, config.margin)));

    const int ge = 2 * pick_half(rng);
    const int m0 = pick_m(rng);
    const int m1 = pick_m(rng);
    const double te = regular_t(ge);
    rep.half_sum_split =
        std::max(rep.half_sum_split, mixed_deviation(half_sum_split(ge, m0, m1, te, config.margin)));
  }
  return rep;
}

}  // namespace cohom1
