// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cohom1/classify.hpp"
#include "cohom1/identities.hpp"
#include "cohom1/solver.hpp"

using namespace cohom1;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, double limit_s, auto&& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.detail += " [over time limit]";
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d %s  %s  (%s; %.2f s)\n", id, o.pass ? "PASS" : "FAIL", title,
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Every (space, triple) of the classification with m0, m1 <= 9 and the
// parametric families cut at l <= 2.
std::vector<ActionDescriptor> triple_set() {
  std::vector<ActionDescriptor> out;
  for (const auto& [g, m0, m1] : classified_triples(9, 2)) {
    out.push_back(make_action(Space::Sphere, g, m0, m1));
    out.push_back(make_action(Space::OrthogonalGroup, g, m0, m1));
  }
  out.push_back(make_action(Space::Sp2Lift, 6, 1, 1));
  return out;
}

std::vector<int> admissible_js(const ActionDescriptor& a) {
  std::vector<int> js;
  for (int j = -4; j <= 4; ++j) {
    if (a.odd_j_allowed || j % 2 == 0) js.push_back(j);
  }
  return js;
}

std::vector<BvpSpec> harmonic_specs() {
  std::set<std::tuple<int, int, int, int>> seen;
  std::vector<BvpSpec> out;
  for (const auto& a : triple_set()) {
    for (int j : admissible_js(a)) {
      const int k = admissible_k(a, j);
      const int G = a.effective_g();
      if (!is_linear_solution(G, a.m0, a.m1, k)) continue;
      if (seen.insert({G, a.m0, a.m1, k}).second) out.push_back(make_bvp(G, a.m0, a.m1, k));
    }
  }
  return out;
}

double linear_deviation(const SolutionProfile& p) {
  double d = 0;
  for (const auto& s : p.samples) d = std::max(d, std::abs(s.r - p.spec.k * s.t));
  return d;
}

Outcome identity_suite() {
  IdentitySuiteConfig cfg;
  cfg.g_max = 12;
  cfg.samples = 10000;
  const auto r = run_identity_suite(cfg);
  const bool ok = r.lemma_sin_sq <= 1e-10 && r.lemma_sin_2r <= 1e-10 && r.cotangent <= 1e-10 &&
                  r.half_sum_split <= 1e-10;
  return {ok, fmt("max deviations sin^2 %.2e, sin2r %.2e, cot %.2e, split %.2e", r.lemma_sin_sq,
                  r.lemma_sin_2r, r.cotangent, r.half_sum_split)};
}

Outcome raw_vs_closed() {
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> u(-1, 1), unit(0, 1);
  double worst_sphere = 0, worst_so = 0;
  for (int i = 0; i < 1000; ++i) {
    const int G = 1 + static_cast<int>(rng() % 12);
    const int m0 = 1 + static_cast<int>(rng() % 9);
    // odd G only carries equal multiplicities
    const int m1 = G % 2 ? m0 : 1 + static_cast<int>(rng() % 9);
    const double t = (0.001 + 0.998 * unit(rng)) * std::numbers::pi / G;
    const TensionSample<> s{t, 4 * u(rng), 10 * u(rng), 50 * u(rng)};
    const double closed = closed_tension(make_bvp(G, m0, m1, 1), s);
    const double sg = std::sin(G * t);
    const double raw = 4 * sg * sg * raw_tension_sphere(G, m0, m1, s);
    worst_sphere = std::max(worst_sphere, std::abs(raw - closed) / (1 + std::abs(closed)));

    const int g = 1 + static_cast<int>(rng() % 6);
    const double tg = (0.001 + 0.998 * unit(rng)) * std::numbers::pi / (2 * g);
    const TensionSample<> sg2{tg, s.r, s.rdot, s.rddot};
    const double closed_so = closed_tension(make_bvp(2 * g, m0, m1, 1), sg2);
    const double s2 = std::sin(2 * g * tg);
    const double raw_so = 4 * s2 * s2 * raw_tension_so(g, m0, m1, sg2);
    worst_so = std::max(worst_so, std::abs(raw_so - closed_so) / (1 + std::abs(closed_so)));
  }
  return {worst_sphere <= 1e-9 && worst_so <= 1e-9,
          fmt("worst relative gap sphere %.2e, SO %.2e over 1000 samples", worst_sphere, worst_so)};
}

Outcome oracle_agreement() {
  int checked = 0, disagree = 0;
  std::string first;
  for (const auto& a : triple_set()) {
    const int G = a.effective_g();
    for (int j : admissible_js(a)) {
      const int k = admissible_k(a, j);
      const double threshold = 1e-9 * make_bvp(G, a.m0, a.m1, k).scale();
      const bool zero = linear_residual_oracle(G, a.m0, a.m1, k) <= threshold;
      ++checked;
      if (zero != is_linear_solution(G, a.m0, a.m1, k)) {
        if (disagree++ == 0) first = fmt(" first: (%d,%d,%d,%d)", G, a.m0, a.m1, k);
      }
    }
  }
  return {disagree == 0, fmt("%d cases, %d disagreements%s", checked, disagree, first.c_str())};
}

// The harmonic k sets exactly as tabulated for spheres, orthogonal groups and Sp(2).
bool tabulated_harmonic(const ActionDescriptor& a, int k) {
  switch (a.space) {
    case Space::Sphere:
      return k == 1 || (a.g == 2 && k == -1) || (a.m0 == a.m1 && k == 1 - a.g);
    case Space::OrthogonalGroup:
      return k == 1 || (a.m0 == a.m1 && k == 1 - 2 * a.g);
    case Space::Sp2Lift:
      return k == 1 || k == -5;
  }
  return false;
}

Outcome classification_tables() {
  int rows = 0, mismatch = 0;
  std::map<std::string, int> where;
  for (const auto& a : triple_set()) {
    for (const auto& v : classify_range(a, -4, 4)) {
      ++rows;
      if (v.harmonic != tabulated_harmonic(a, v.k)) {
        ++mismatch;
        ++where[fmt("%s k=%d", to_string(a.space).data(), v.k) +
                (a.g == 1 ? " g=1" : fmt(" g=%d", a.g))];
      }
    }
  }
  std::string detail = fmt("%d rows, %d discrepancies", rows, mismatch);
  for (const auto& [key, n] : where) detail += fmt("; %s x%d", key.c_str(), n);
  return {mismatch == 0, detail};
}

Outcome degree_table() {
  struct Row {
    Space space;
    int g, m, j, degree;
  };
  std::vector<Row> rows;
  for (int m = 1; m <= 6; ++m) rows.push_back({Space::OrthogonalGroup, 2, m, -2, m % 2 ? 1 : -3});
  const int d3[] = {1, -5, -5, -5};
  const int m3[] = {1, 2, 4, 8};
  for (int i = 0; i < 4; ++i) rows.push_back({Space::OrthogonalGroup, 3, m3[i], -2, d3[i]});
  rows.push_back({Space::OrthogonalGroup, 4, 1, -2, 1});
  rows.push_back({Space::OrthogonalGroup, 4, 2, -2, -7});
  rows.push_back({Space::OrthogonalGroup, 6, 1, -2, 1});
  rows.push_back({Space::OrthogonalGroup, 6, 2, -2, -11});
  rows.push_back({Space::Sp2Lift, 6, 1, -1, 1});

  int bad = 0;
  std::string first;
  for (const auto& r : rows) {
    const auto a = make_action(r.space, r.g, r.m, r.m);
    const auto v = is_harmonic_k_map(a, r.j);
    if (v.degree != r.degree || !v.harmonic) {
      if (bad++ == 0) first = fmt(" first: %s k=%d degree %d", a.label().c_str(), v.k, v.degree);
    }
  }
  const auto table = examples_table();
  const bool same_size = table.size() == rows.size();
  for (size_t i = 0; same_size && i < rows.size(); ++i) {
    if (table[i].degree != rows[i].degree) ++bad;
  }
  return {bad == 0 && same_size,
          fmt("%zu entries, %d wrong%s", rows.size(), bad, first.c_str())};
}

struct Recovery {
  std::vector<BvpSpec> specs;
  std::vector<double> slope0, slope1;
  int failed = 0;
  std::string first;
  double worst_dev = 0, worst_res = 0;
};

Recovery recovery;

Outcome solver_recovery() {
  ShootingConfig cfg;
  recovery.specs = harmonic_specs();
  for (const auto& spec : recovery.specs) {
    try {
      const auto p = solve(spec, cfg);
      const double dev = linear_deviation(p);
      recovery.worst_dev = std::max(recovery.worst_dev, dev);
      recovery.worst_res = std::max(recovery.worst_res, p.residual);
      recovery.slope0.push_back(p.slope0);
      recovery.slope1.push_back(p.slope1);
      if (dev > 1e-6 || p.residual > 1e-6) {
        if (recovery.failed++ == 0) recovery.first = " first: " + spec.label();
      }
    } catch (const Error& e) {
      recovery.slope0.push_back(std::nan(""));
      recovery.slope1.push_back(std::nan(""));
      if (recovery.failed++ == 0) recovery.first = " first: " + spec.label() + " " + e.what();
    }
  }
  return {recovery.failed == 0,
          fmt("%zu BVPs, %d failed, max |r-kt| %.2e, max residual %.2e%s", recovery.specs.size(),
              recovery.failed, recovery.worst_dev, recovery.worst_res, recovery.first.c_str())};
}

Outcome bracket_detection() {
  const auto spec = make_bvp(1, 2, 2, 1);
  ShootingConfig cfg;
  cfg.bracket = std::array{0.0, 20.0};
  cfg.sweep_points = 512;
  const auto points = sweep(spec, cfg, 1);
  const auto brackets = sign_change_brackets(points);
  bool identity = false;
  for (const auto& [lo, hi] : brackets) identity |= lo.a <= 1 && 1 <= hi.a;
  std::string list;
  for (const auto& [lo, hi] : brackets) list += fmt(" [%.4f,%.4f]", lo.a, hi.a);
  return {identity && brackets.size() >= 2,
          fmt("%zu sign changes:%s", brackets.size(), list.c_str())};
}

Outcome robustness() {
  if (recovery.specs.empty()) return {false, "criterion 6 produced no cases"};
  ShootingConfig cfg;
  cfg.eps0 /= 2;
  cfg.eps1 /= 2;
  cfg.rel_tol /= 10;
  double worst = 0;
  int failed = 0;
  for (size_t i = 0; i < recovery.specs.size(); ++i) {
    try {
      const auto p = solve(recovery.specs[i], cfg);
      const double d = std::max(std::abs(p.slope0 - recovery.slope0[i]),
                                std::abs(p.slope1 - recovery.slope1[i]));
      if (!(d <= 1e-7)) ++failed;
      if (std::isfinite(d)) worst = std::max(worst, d);
    } catch (const Error&) {
      ++failed;
    }
  }
  return {failed == 0, fmt("%zu BVPs, %d out of tolerance, max slope change %.2e",
                           recovery.specs.size(), failed, worst)};
}

}  // namespace

int main() {
  report(1, "identity suite", 5, identity_suite);
  report(2, "raw vs closed tension", 5, raw_vs_closed);
  report(3, "linear-solution oracle agreement", 10, oracle_agreement);
  report(4, "harmonic sets per action", 0, classification_tables);
  report(5, "degree table", 0, degree_table);
  report(6, "solver recovery of linear solutions", 60, solver_recovery);
  report(7, "nonlinear bracket detection on (1,2,2,1)", 30, bracket_detection);
  report(8, "robustness under eps and tolerance changes", 0, robustness);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
