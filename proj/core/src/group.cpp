#include "probectl/group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace probectl {

namespace {

constexpr double kTableTol = 1e-10;

int find_element(const std::vector<Rotation>& elems, const Rotation& r,
                 double tol) {
  for (size_t i = 0; i < elems.size(); ++i) {
    if (distance(elems[i], r) <= tol) return static_cast<int>(i);
  }
  return -1;
}

// Closure of a generator set under composition.
std::vector<Rotation> generate(std::vector<Rotation> gens) {
  std::vector<Rotation> elems;
  elems.push_back(Rotation());
  for (const Rotation& g : gens) {
    if (find_element(elems, g, kTableTol) < 0) elems.push_back(g);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (size_t a = 0; a < elems.size(); ++a) {
      for (size_t b = 0; b < elems.size(); ++b) {
        Rotation p = compose(elems[a], elems[b]);
        if (find_element(elems, p, kTableTol) < 0) {
          elems.push_back(p);
          grew = true;
        }
      }
    }
    if (elems.size() > 200)
      throw std::logic_error("generate: closure did not stay finite");
  }
  return elems;
}

// Deterministic element order: identity first, then lexicographically by
// canonical quaternion, descending in w (identity has the maximal w = 1).
void sort_elements(std::vector<Rotation>& elems) {
  std::sort(elems.begin(), elems.end(), [](const Rotation& a, const Rotation& b) {
    const auto& p = a.q();
    const auto& q = b.q();
    for (int i = 0; i < 4; ++i) {
      if (std::abs(p[i] - q[i]) > 1e-9) return p[i] > q[i];
    }
    return false;
  });
}

std::vector<Rotation> d8_elements() {
  std::vector<Rotation> gens;
  gens.push_back(Rotation::about_z(M_PI / 4.0));
  gens.push_back(Rotation::from_axis_angle(Eigen::Vector3d::UnitX(), M_PI));
  return generate(gens);
}

std::vector<Rotation> s4_elements() {
  std::vector<Rotation> gens;
  gens.push_back(Rotation::about_z(M_PI / 2.0));
  gens.push_back(Rotation::from_axis_angle(
      Eigen::Vector3d(1.0, 1.0, 1.0).normalized(), 2.0 * M_PI / 3.0));
  return generate(gens);
}

std::vector<Rotation> a5_elements() {
  // Icosahedron with vertices at cyclic permutations of (0, +-1, +-phi):
  // five-fold axis through a vertex, two-fold axis through an edge midpoint
  // (the z axis).
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Rotation> gens;
  gens.push_back(Rotation::from_axis_angle(Eigen::Vector3d(0.0, 1.0, phi),
                                           2.0 * M_PI / 5.0));
  gens.push_back(Rotation::about_z(M_PI));
  return generate(gens);
}

}  // namespace

GroupName group_name_from_string(const std::string& s) {
  if (s == "D8" || s == "d8") return GroupName::D8;
  if (s == "S4" || s == "s4") return GroupName::S4;
  if (s == "A5" || s == "a5") return GroupName::A5;
  throw std::invalid_argument("unknown group: " + s);
}

std::string to_string(GroupName name) {
  switch (name) {
    case GroupName::D8: return "D8";
    case GroupName::S4: return "S4";
    case GroupName::A5: return "A5";
  }
  return "?";
}

int FiniteGroup::element_order(int i) const {
  int acc = i;
  int m = 1;
  while (acc != 0) {
    acc = mul[acc][i];
    ++m;
    if (m > order() + 1) throw std::logic_error("element_order: broken table");
  }
  return m;
}

int FiniteGroup::power_index(int g, long long e) const {
  int ord = element_order(g);
  long long r = ((e % ord) + ord) % ord;
  int acc = 0;
  for (long long k = 0; k < r; ++k) acc = mul[acc][g];
  return acc;
}

int FiniteGroup::index_of(const Rotation& r, double tol) const {
  int i = find_element(elements, r, tol);
  if (i < 0) throw std::out_of_range("FiniteGroup: rotation not in group");
  return i;
}

std::vector<int> FiniteGroup::involutions() const {
  std::vector<int> out;
  for (int i = 1; i < order(); ++i) {
    if (element_order(i) == 2) out.push_back(i);
  }
  return out;
}

FiniteGroup build_group(GroupName name) {
  FiniteGroup g;
  g.name = name;
  size_t expect = 0;
  switch (name) {
    case GroupName::D8:
      g.elements = d8_elements();
      expect = 16;
      break;
    case GroupName::S4:
      g.elements = s4_elements();
      expect = 24;
      break;
    case GroupName::A5:
      g.elements = a5_elements();
      expect = 60;
      break;
  }
  if (g.elements.size() != expect)
    throw std::logic_error("build_group: unexpected order " +
                           std::to_string(g.elements.size()));
  sort_elements(g.elements);
  if (!g.elements[0].is_identity(kTableTol))
    throw std::logic_error("build_group: identity not at index 0");

  int n = g.order();
  g.mul.assign(n, std::vector<int>(n, -1));
  g.inverse.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int c = find_element(g.elements, compose(g.elements[a], g.elements[b]),
                           kTableTol);
      if (c < 0) throw std::logic_error("build_group: table not closed");
      g.mul[a][b] = c;
      if (c == 0) g.inverse[a] = b;
    }
  }
  return g;
}

}  // namespace probectl
