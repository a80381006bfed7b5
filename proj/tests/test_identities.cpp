#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cohom1/identities.hpp"

using namespace cohom1;
using std::numbers::pi;

namespace {

bool agrees(const IdentityValues<double>& v, double tol = 1e-10) {
  return mixed_deviation(v) <= tol;
}

}  // namespace

TEST_CASE("sin^2 sum identity") {
  const auto one = lemma_sin_sq(IdentitySample<>{1, 0.9, 0.4});
  CHECK(one.lhs == doctest::Approx(std::sin(0.9) * std::sin(0.9)));
  CHECK(one.rhs == doctest::Approx(std::sin(0.9) * std::sin(0.9)));
  for (int g = 1; g <= 12; ++g) {
    const double t = 0.37 / g;
    const auto v = lemma_sin_sq(IdentitySample<>{g, t, t});
    CHECK(v.lhs == doctest::Approx(g * std::pow(std::sin(g * t), 2)));
    CHECK(agrees(v));
  }
  CHECK(agrees(lemma_sin_sq(IdentitySample<>{5, 0.7, 0.3})));
}

TEST_CASE("sin 2r sum identity") {
  const auto one = lemma_sin_2r(IdentitySample<>{1, 1.2, 0.4});
  CHECK(one.lhs == doctest::Approx(std::sin(2.4)));
  CHECK(one.rhs == doctest::Approx(std::sin(2.4)));
  CHECK(agrees(lemma_sin_2r(IdentitySample<>{6, 1.1, 0.2})));
}

TEST_CASE("sin 2r identity is the r-derivative of the sin^2 identity") {
  // d/dr sin^2(r - a) = sin 2(r - a), so central differences of lemma_sin_sq
  // must reproduce lemma_sin_2r on both sides.
  for (int g : {2, 3, 7}) {
    const double r = 0.8, t = 0.23, h = 1e-5;
    const auto up = lemma_sin_sq(IdentitySample<>{g, r + h, t});
    const auto dn = lemma_sin_sq(IdentitySample<>{g, r - h, t});
    const auto d = lemma_sin_2r(IdentitySample<>{g, r, t});
    CHECK((up.lhs - dn.lhs) / (2 * h) == doctest::Approx(d.lhs).epsilon(1e-7));
    CHECK((up.rhs - dn.rhs) / (2 * h) == doctest::Approx(d.rhs).epsilon(1e-7));
  }
}

TEST_CASE("cotangent identity") {
  const auto one = cotangent_identity(1, 0.6);
  CHECK(one.lhs == doctest::Approx(1 / std::tan(0.6)));
  const auto two = cotangent_identity(2, pi / 8);
  CHECK(two.lhs == doctest::Approx(2.0));
  CHECK(two.rhs == doctest::Approx(2.0));
  for (double t : {0.013, 0.11, 0.2}) CHECK(agrees(cotangent_identity(12, t)));
}

TEST_CASE("half-sum split") {
  for (double t : {0.05, 0.3, 0.61}) CHECK(agrees(half_sum_split(4, 6, 9, t)));
  CHECK_THROWS_AS(half_sum_split(3, 1, 1, 0.2), Error);
}

TEST_CASE("long double oracle") {
  const IdentitySample<long double> sl{9, 2.3L, 0.71L};
  const IdentitySample<double> sd{9, 2.3, 0.71};
  const auto l = lemma_sin_sq(sl);
  const auto d = lemma_sin_sq(sd);
  CHECK(std::abs(d.lhs - static_cast<double>(l.lhs)) < 1e-12 * (1 + std::abs(d.lhs)));
  CHECK(std::abs(d.rhs - static_cast<double>(l.rhs)) < 1e-12 * (1 + std::abs(d.rhs)));
}

TEST_CASE("periodicity under t -> t + pi/g") {
  // The left sums are invariant under the index shift; the right sides are
  // pi/g-periodic in (r, t) jointly.
  for (int g : {2, 3, 5}) {
    const double r = 0.4, t = 0.17, s = pi / g;
    const auto a = lemma_sin_sq(IdentitySample<>{g, r, t});
    const auto b = lemma_sin_sq(IdentitySample<>{g, r + s, t + s});
    CHECK(a.lhs == doctest::Approx(b.lhs).epsilon(1e-11));
    CHECK(a.rhs == doctest::Approx(b.rhs).epsilon(1e-11));
    const auto c = cotangent_identity(g, t);
    const auto d = cotangent_identity(g, t + s);
    CHECK(c.lhs == doctest::Approx(d.lhs).epsilon(1e-11));
    CHECK(c.rhs == doctest::Approx(d.rhs).epsilon(1e-11));
  }
}

TEST_CASE("invalid samples") {
  CHECK_THROWS_AS(lemma_sin_sq(IdentitySample<>{0, 0.1, 0.2}), Error);
  CHECK_THROWS_AS(lemma_sin_sq(IdentitySample<>{-1, 0.1, 0.2}), Error);
  CHECK_THROWS_AS(cotangent_identity(4, pi / 4), Error);
}

TEST_CASE("seeded identity suite") {
  IdentitySuiteConfig cfg;
  cfg.samples = 2000;
  const auto a = run_identity_suite(cfg);
  const auto b = run_identity_suite(cfg);
  CHECK(a.max() <= 1e-10);
  CHECK(a.samples == 2000);
  CHECK(a.lemma_sin_sq == b.lemma_sin_sq);
  CHECK(a.half_sum_split == b.half_sum_split);
}
