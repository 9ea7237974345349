#pragma once

#include <string>
#include <vector>

#include "probectl/rotation.hpp"

namespace probectl {

enum class GroupName { D8, S4, A5 };

GroupName group_name_from_string(const std::string& s);
std::string to_string(GroupName name);

// A finite rotation group with an index-based multiplication table. Identity
// sits at index 0 and the table is validated against quaternion composition
// on construction.
struct FiniteGroup {
  GroupName name = GroupName::D8;
  std::vector<Rotation> elements;
  std::vector<std::vector<int>> mul;  // mul[a][b] = index of a o b
  std::vector<int> inverse;

  int order() const { return static_cast<int>(elements.size()); }
  int mul_index(int a, int b) const { return mul[a][b]; }
  // Smallest m >= 1 with g^m = identity.
  int element_order(int i) const;
  // g^e via the table (e may be negative).
  int power_index(int g, long long e) const;
  // Index of the nearest element; throws std::out_of_range if none is within
  // tol.
  int index_of(const Rotation& r, double tol = 1e-10) const;
  std::vector<int> involutions() const;
};

// Rotation embeddings: D8 as the 16 octagon symmetries (z-rotations by
// multiples of 45 degrees plus in-plane 180-degree flips), S4 as the 24
// octahedral rotations, A5 as the 60 icosahedral rotations.
FiniteGroup build_group(GroupName name);

}  // namespace probectl
