#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cohom1/ode.hpp"

using namespace cohom1;
using std::numbers::pi;

namespace {

std::vector<ProfileSample> linear_profile(const BvpSpec& spec, double slope, int n) {
  std::vector<ProfileSample> out;
  const double L = spec.length();
  for (int i = 1; i <= n; ++i) {
    const double t = L * i / (n + 1);
    out.push_back({t, slope * t, slope});
  }
  return out;
}

}  // namespace

TEST_CASE("identity map has zero closed tension") {
  const auto spec = make_bvp(3, 2, 2, 1);
  for (double t : {0.1, 0.4, 0.7, 1.0}) {
    CHECK(std::abs(closed_tension(spec, TensionSample<>{t, t, 1, 0})) < 1e-12);
  }
}

TEST_CASE("linear solutions from the classification") {
  const auto a = make_bvp(2, 1, 3, -1);
  const auto b = make_bvp(6, 1, 1, -5);
  const auto c = make_bvp(4, 1, 1, -3);
  for (double t : {0.05, 0.2, 0.37, 0.5}) {
    CHECK(std::abs(closed_tension(a, TensionSample<>{t, -t, -1, 0})) < 1e-12);
    CHECK(std::abs(closed_tension(b, TensionSample<>{t / 2, -2.5 * t, -5, 0})) < 1e-11);
    CHECK(std::abs(rhs(c)(t / 1.6, -3 * t / 1.6, -3)) < 1e-11);
    CHECK(std::abs(rhs(a)(t, -t, -1)) < 1e-11);
  }
}

TEST_CASE("symmetric point of the G=1 equation") {
  const auto spec = make_bvp(1, 2, 2, 1);
  for (double a : {-3.0, 0.0, 0.5, 7.0}) {
    CHECK(std::abs(closed_tension(spec, TensionSample<>{pi / 2, pi / 2, a, 0})) < 1e-12);
  }
}

TEST_CASE("closed tension matches the raw sums at a fixed point") {
  const auto spec = make_bvp(3, 2, 2, 1);
  const TensionSample<> s{pi / 6, pi / 8, 0.5, 0.25};
  const double sin_gt = std::sin(3 * s.t);
  CHECK(closed_tension(spec, s) ==
        doctest::Approx(4 * sin_gt * sin_gt * raw_tension_sphere(3, 2, 2, s)).epsilon(1e-12));
}

TEST_CASE("scale identity and raw-vs-closed on random samples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 2000; ++i) {
    const int G = 1 + static_cast<int>(rng() % 12);
    const int m = 1 + static_cast<int>(rng() % 9);
    int m1 = 1 + static_cast<int>(rng() % 9);
    if (G % 2 == 1) m1 = m;
    const double t = (0.02 + 0.96 * (u(rng) + 3) / 6) * pi / G;
    const TensionSample<> s{t, u(rng), u(rng), u(rng)};
    const auto eq = make_bvp(G, m, m, 1);
    const double full = closed_tension(eq, s);
    CHECK(std::abs(2 * closed_tension_equal_m(eq, s) - full) <= 1e-12 * (1 + std::abs(full)) * 40);

    const auto spec = make_bvp(G, m, m1, 1);
    const double closed = closed_tension(spec, s);
    const double sg = std::sin(G * t);
    const double raw = 4 * sg * sg * raw_tension_sphere(G, m, m1, s);
    CHECK(std::abs(raw - closed) <= 1e-9 * (1 + std::abs(closed)));
  }
}

TEST_CASE("lift equivalence") {
  for (int g : {1, 2, 3, 6}) {
    const TensionSample<> s{0.3 / g, 0.8, -1.2, 0.4};
    CHECK(raw_tension_so(g, 2, 3, s) == raw_tension_sphere(2 * g, 2, 3, s));
  }
}

TEST_CASE("single-term raw tension") {
  const TensionSample<> s{0.7, 1.3, 0.4, -0.2};
  const double m = 3;
  const double expect = s.rddot + m / std::tan(s.t) * s.rdot -
                        m / 2 * std::sin(2 * s.r) / (std::sin(s.t) * std::sin(s.t));
  CHECK(raw_tension_sphere(1, 3, 3, s) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("long double cross-check of the closed form") {
  const auto spec = make_bvp(5, 4, 4, -4);
  const TensionSample<long double> sl{0.41L, -1.7L, 2.2L, 0.9L};
  const TensionSample<double> sd{0.41, -1.7, 2.2, 0.9};
  const long double ref = closed_tension(spec, sl);
  CHECK(std::abs(closed_tension(spec, sd) - static_cast<double>(ref)) < 1e-12 * spec.scale());
}

TEST_CASE("argument reduction keeps large k accurate") {
  const auto spec = make_bvp(2, 1, 3, -1);
  const double t = 0.3 + 200 * pi;
  CHECK(std::abs(closed_tension(spec, TensionSample<>{t, -t, -1, 0})) < 1e-10);
}

TEST_CASE("rhs round-trip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int G : {1, 2, 3, 4, 6, 8}) {
    const auto spec = make_bvp(G, 2, G % 2 ? 2 : 5, 3);
    const Rhs f = rhs(spec);
    for (int i = 0; i < 100; ++i) {
      const double t = (0.01 + 0.98 * (u(rng) + 4) / 8) * spec.length();
      const double r = u(rng), rd = u(rng);
      const double sg = std::sin(G * t);
      const double value = closed_tension(spec, TensionSample<>{t, r, rd, f(t, r, rd)});
      CHECK(std::abs(value) <= 1e-12 * spec.scale() * (1 + std::abs(rd)) / (4 * sg * sg) * 4);
    }
  }
}

TEST_CASE("pole proximity is rejected") {
  const auto spec = make_bvp(4, 1, 1, 1);
  CHECK_THROWS_AS(closed_tension(spec, TensionSample<>{pi / 4 + 1e-10, 0, 0, 0}), Error);
  CHECK_THROWS_AS(rhs(spec)(0.0, 0, 0), Error);
  try {
    raw_tension_sphere(4, 1, 1, TensionSample<>{pi / 2, 0, 0, 0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleProximity);
  }
  CHECK_THROWS_AS(closed_tension_equal_m(make_bvp(2, 1, 3, 1), TensionSample<>{0.3, 0, 0, 0}),
                  Error);
}

TEST_CASE("pole-reflection symmetry of the linear residual") {
  for (int G : {2, 3, 4, 6}) {
    for (int k : {1, 1 - G, 1 + G, 1 - 2 * G}) {
      const auto spec = make_bvp(G, 2, 2, k);
      const double L = spec.length();
      for (double f : {0.1, 0.27, 0.43}) {
        const double left = closed_tension(spec, TensionSample<>{f * L, k * f * L, double(k), 0});
        const double right = closed_tension(
            spec, TensionSample<>{(1 - f) * L, k * (1 - f) * L, double(k), 0});
        CHECK(std::abs(std::abs(left) - std::abs(right)) < 1e-10 * spec.scale());
      }
    }
  }
}

TEST_CASE("residual_norm of exact and perturbed profiles") {
  const auto spec = make_bvp(3, 2, 2, -2);
  const auto exact = linear_profile(spec, -2, 200);
  const auto rep = residual_norm(spec, exact);
  CHECK(rep.max_abs <= 1e-10);
  CHECK(rep.boundary_err[0] < 1e-14);
  CHECK(rep.boundary_err[1] < 1e-14);

  const auto id = make_bvp(3, 2, 2, 1);
  std::vector<ProfileSample> bent;
  for (int i = 1; i <= 200; ++i) {
    const double t = id.length() * i / 201;
    bent.push_back({t, t + 0.01 * std::sin(3 * t), 1 + 0.03 * std::cos(3 * t)});
  }
  CHECK(residual_norm(id, bent).max_abs > 1e-4);
}

TEST_CASE("residual_norm rejects bad input") {
  const auto spec = make_bvp(2, 1, 1, 1);
  const auto few = linear_profile(spec, 1, 10);
  try {
    residual_norm(spec, few);
    FAIL("expected ProfileTooCoarse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ProfileTooCoarse);
  }
  auto outside = linear_profile(spec, 1, 40);
  outside.back().t = spec.length() + 0.1;
  CHECK_THROWS_AS(residual_norm(spec, outside), Error);
}

TEST_CASE("finite difference derivative is exact on quadratics") {
  std::vector<double> t, v;
  for (int i = 0; i < 30; ++i) {
    const double x = 0.1 * i + 0.002 * i * i;
    t.push_back(x);
    v.push_back(3 * x * x - x + 2);
  }
  const auto d = finite_difference_derivative(t, v);
  for (size_t i = 0; i < t.size(); ++i) CHECK(d[i] == doctest::Approx(6 * t[i] - 1).epsilon(1e-9));
}
