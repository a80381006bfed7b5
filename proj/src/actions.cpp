#include "cohom1/actions.hpp"

#include <string>
#include <utility>

#include "cohom1/error.hpp"

namespace cohom1 {
namespace {

bool is_even(int x) { return x % 2 == 0; }

// One ordering only; callers try both.
bool listed_ordered(int g, int m0, int m1, int max_ell) {
  switch (g) {
    case 1:
      return m0 == m1;
    case 2:
      return true;
    case 3:
      return m0 == m1 && (m0 == 1 || m0 == 2 || m0 == 4 || m0 == 8);
    case 4: {
      if (m1 == 1) return true;                   // (4, m0, 1)
      if (m0 == 2 && m1 == 2) return true;        // (4, 2, 2)
      if (m0 == 2 && m1 % 2 == 1) {               // (4, 2, 2l+1)
        return (m1 - 1) / 2 <= max_ell;
      }
      if (m0 == 4 && m1 >= 3 && (m1 - 3) % 4 == 0) {  // (4, 4, 4l+3)
        return (m1 - 3) / 4 <= max_ell;
      }
      if (m0 == 4 && m1 == 5) return true;
      if (m0 == 6 && m1 == 9) return true;
      return false;
    }
    case 6:
      return m0 == m1 && (m0 == 1 || m0 == 2);
    default:
      return false;
  }
}

bool tangential_exception_ordered(int g, int m0, int m1) {
  if (g != 4) return false;
  if (m0 == 2 && m1 % 2 == 1 && m1 >= 3) return true;  // (4,2,1) is a (4,m0,1) case
  if (m0 == 4 && m1 >= 3 && (m1 - 3) % 4 == 0) return true;
  if (m0 == 4 && m1 == 5) return true;
  if (m0 == 6 && m1 == 9) return true;
  return false;
}

std::string triple_text(int g, int m0, int m1) {
  return "(" + std::to_string(g) + "," + std::to_string(m0) + "," + std::to_string(m1) + ")";
}

}  // namespace

std::string_view to_string(Space space) {
  switch (space) {
    case Space::Sphere: return "sphere";
    case Space::OrthogonalGroup: return "so";
    case Space::Sp2Lift: return "sp2";
  }
  return "unknown";
}

Space parse_space(std::string_view text) {
  if (text == "sphere" || text == "S") return Space::Sphere;
  if (text == "so" || text == "orthogonal" || text == "SO") return Space::OrthogonalGroup;
  if (text == "sp2" || text == "Sp2") return Space::Sp2Lift;
  throw Error(ErrorCode::InvalidSpace, "unknown space '" + std::string(text) + "'");
}

std::string_view to_string(Tangential status) {
  switch (status) {
    case Tangential::Vanishes: return "vanishes";
    case Tangential::Unresolved: return "unresolved";
    case Tangential::TriviallyIdentity: return "identity";
  }
  return "unknown";
}

int ActionDescriptor::effective_g() const noexcept {
  return space == Space::OrthogonalGroup ? 2 * g : g;
}

int ActionDescriptor::ambient_dim() const noexcept {
  return space == Space::OrthogonalGroup ? n + 2 : n + 1;
}

std::string ActionDescriptor::label() const {
  switch (space) {
    case Space::Sphere: return "S^" + std::to_string(n + 1) + " " + triple_text(g, m0, m1);
    case Space::OrthogonalGroup:
      return "SO(" + std::to_string(n + 2) + ") " + triple_text(g, m0, m1);
    case Space::Sp2Lift: return "Sp(2) " + triple_text(g, m0, m1);
  }
  return {};
}

bool is_classified(int g, int m0, int m1, int max_ell) {
  if (m0 < 1 || m1 < 1) return false;
  return listed_ordered(g, m0, m1, max_ell) || listed_ordered(g, m1, m0, max_ell);
}

std::vector<std::array<int, 3>> classified_triples(int max_m, int max_ell) {
  std::vector<std::array<int, 3>> out;
  for (int g : {1, 2, 3, 4, 6}) {
    for (int m0 = 1; m0 <= max_m; ++m0) {
      for (int m1 = 1; m1 <= max_m; ++m1) {
        if (is_classified(g, m0, m1, max_ell)) out.push_back({g, m0, m1});
      }
    }
  }
  return out;
}

ActionDescriptor make_action(Space space, int g, int m0, int m1, bool strict) {
  if (g < 1 || m0 < 1 || m1 < 1) {
    throw Error(ErrorCode::InvalidTriple, triple_text(g, m0, m1) + ": entries must be positive");
  }
  if (g != 1 && g != 2 && g != 3 && g != 4 && g != 6) {
    throw Error(ErrorCode::InvalidTriple, triple_text(g, m0, m1) + ": g must be one of 1,2,3,4,6");
  }
  if (!is_even(g) && m0 != m1) {
    throw Error(ErrorCode::InvalidTriple, triple_text(g, m0, m1) + ": odd g requires m0 = m1");
  }
  if (!is_even((m0 + m1) * g)) {
    throw Error(ErrorCode::InvalidTriple, triple_text(g, m0, m1) + ": (m0+m1) g must be even");
  }
  if (space == Space::Sp2Lift && !(g == 6 && m0 == 1 && m1 == 1)) {
    throw Error(ErrorCode::InvalidSpace,
                triple_text(g, m0, m1) + ": the Sp(2) lift exists only for (6,1,1)");
  }
  if (strict && !is_classified(g, m0, m1)) {
    throw Error(ErrorCode::InvalidTriple,
                triple_text(g, m0, m1) + ": not in the classification list");
  }

  ActionDescriptor a;
  a.space = space;
  a.g = g;
  a.m0 = m0;
  a.m1 = m1;
  a.n = (m0 + m1) * g / 2;
  a.weyl_order = space == Space::Sp2Lift ? 12 : 2 * g;
  a.codim0 = m0 + 1;
  a.codim1 = m1 + 1;
  a.odd_j_allowed = space != Space::OrthogonalGroup;
  a.strict = strict;
  if (g == 4 && ((m0 == 2 && m1 == 1) || (m0 == 1 && m1 == 2))) {
    a.notes = "two inequivalent (4,2,1)-actions share this descriptor";
  }
  return a;
}

int admissible_k(const ActionDescriptor& action, int j) {
  if (!is_even(j) && !action.odd_j_allowed) {
    throw Error(ErrorCode::InadmissibleJ,
                "j=" + std::to_string(j) + " is odd; " + action.label() + " needs even j");
  }
  return j * action.g + 1;
}

int degree_of_k_map(const ActionDescriptor& action, int j) {
  const int k = admissible_k(action, j);
  const bool odd0 = !is_even(action.codim0);
  const bool odd1 = !is_even(action.codim1);
  if (odd0 && odd1) return k;
  if (is_even(j)) return 1;
  if (!odd0 && !odd1 && action.weyl_order % 4 != 0) return 0;
  if (!odd0 && odd1 && action.weyl_order % 8 != 0) return -1;
  return 1;
}

Tangential tangential_vanishes(const ActionDescriptor& action) {
  if (!is_classified(action.g, action.m0, action.m1)) {
    throw Error(ErrorCode::InvalidTriple,
                triple_text(action.g, action.m0, action.m1) + ": needs a classified triple");
  }
  if (action.space == Space::Sp2Lift) return Tangential::Vanishes;
  if (tangential_exception_ordered(action.g, action.m0, action.m1) ||
      tangential_exception_ordered(action.g, action.m1, action.m0)) {
    return Tangential::Unresolved;
  }
  return Tangential::Vanishes;
}

}  // namespace cohom1
