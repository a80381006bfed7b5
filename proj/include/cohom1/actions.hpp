#pragma once

#include <array>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace cohom1 {

/// Ambient manifold family carrying the cohomogeneity-one action.
enum class Space {
  Sphere,           ///< S^{n+1}
  OrthogonalGroup,  ///< SO(n+2) with the lifted action
  Sp2Lift,          ///< Sp(2), the exceptional lift of the (6,1)-action on S^7
};

std::string_view to_string(Space space);
/// Accepts "sphere", "so" / "orthogonal", "sp2".
Space parse_space(std::string_view text);

enum class Tangential { Vanishes, Unresolved, TriviallyIdentity };

std::string_view to_string(Tangential status);

/// A (g, m0, m1)-action together with the scalar data derived from it.
///
/// Everything here depends only on (g, m0, m1) and the space, so the two
/// inequivalent (4,2,1)-actions share one descriptor.
struct ActionDescriptor {
  Space space = Space::Sphere;
  int g = 1;
  int m0 = 1;
  int m1 = 1;
  int n = 1;               ///< (m0 + m1) g / 2
  int weyl_order = 2;      ///< |W|
  int codim0 = 2;          ///< codimension of the orbit through gamma(0)
  int codim1 = 2;
  bool odd_j_allowed = true;
  bool strict = true;
  std::string notes;

  /// Curvature count of the boundary value problem this action reduces to:
  /// g on spheres and Sp(2), 2g on SO(n+2).
  int effective_g() const noexcept;
  /// Dimension parameter of the ambient space: n+1 for S^{n+1}, n+2 for SO(n+2).
  int ambient_dim() const noexcept;
  std::string label() const;

  friend bool operator==(const ActionDescriptor&, const ActionDescriptor&) = default;
};

/// Triple membership in the Hsiang-Lawson / Takagi-Takahashi list, up to
/// swapping m0 and m1. `max_ell` bounds the parameter of the
/// (4,2,2l+1) and (4,4,4l+3) families.
bool is_classified(int g, int m0, int m1, int max_ell = std::numeric_limits<int>::max());

/// All ordered classified triples with 1 <= m0, m1 <= max_m.
std::vector<std::array<int, 3>> classified_triples(int max_m, int max_ell);

ActionDescriptor make_action(Space space, int g, int m0, int m1, bool strict = true);

/// k = j g + 1; throws InadmissibleJ for odd j on SO(n+2).
int admissible_k(const ActionDescriptor& action, int j);

/// Degree of the k-map, k = j g + 1, with gamma(0) in the orbit of
/// codimension m0 + 1.
int degree_of_k_map(const ActionDescriptor& action, int j);

/// Vanishes or Unresolved; never TriviallyIdentity.
Tangential tangential_vanishes(const ActionDescriptor& action);

}  // namespace cohom1
