#pragma once

#include <string>
#include <vector>

#include "cohom1/actions.hpp"
#include "cohom1/ode.hpp"

namespace cohom1 {

/// Whether r(t) = k t solves the (G, M0, M1, k) problem: k = 1, k = -1 with
/// G = 2 (or G = 1 and M0 = M1), or k = 1 - G with M0 = M1.
bool is_linear_solution(int G, int M0, int M1, int k);

/// max |closed_tension| of r = k t over `samples` Chebyshev nodes of (0, pi/G).
double linear_residual_oracle(int G, int M0, int M1, int k, int samples = 64);

/// |closed_tension| of r = k t at the single point used to rule out linear
/// solutions: t = pi/(4G) when M0 = M1, t = pi/(2G) otherwise.
double pinch_point_residual(int G, int M0, int M1, int k);

struct HarmonicityVerdict {
  ActionDescriptor action;
  int j = 0;
  int k = 1;
  bool is_linear_solution = false;
  Tangential tangential = Tangential::Vanishes;
  bool harmonic = false;
  int degree = 1;
  std::string reason;
};

/// Harmonicity of the k-map, k = j g + 1. The closed-form rule for the space
/// is checked against (linear solution) and (tangential part vanishes); a
/// mismatch throws std::logic_error.
HarmonicityVerdict is_harmonic_k_map(const ActionDescriptor& action, int j);

/// One verdict per admissible j in [jmin, jmax].
std::vector<HarmonicityVerdict> classify_range(const ActionDescriptor& action, int jmin, int jmax);

/// The harmonic self-maps of SO(n) and Sp(2) produced by the lifted actions:
/// -3-maps of SO(2m+2), m <= 6; -5-maps of SO(5), SO(8), SO(14), SO(26);
/// -7-maps of SO(6), SO(10); -11-maps of SO(8), SO(14); the -5-map of Sp(2).
std::vector<HarmonicityVerdict> examples_table();

}  // namespace cohom1
