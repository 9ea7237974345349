#pragma once

#include <Eigen/Dense>
#include <array>

namespace probectl {

// Default tolerance for equality/order predicates throughout the library.
// Accumulated arithmetic noise stays near 1e-12, leaving three orders of
// magnitude of headroom.
inline constexpr double kDefaultTol = 1e-9;

struct AxisAngle {
  Eigen::Vector3d axis;  // unit vector
  double angle = 0.0;    // radians
};

// A 3D rotation stored as a unit quaternion with a canonical sign: the first
// nonzero component is positive, so each SO(3) element has exactly one
// representative despite the SU(2) double cover.
class Rotation {
 public:
  Rotation() : q_{1.0, 0.0, 0.0, 0.0} {}

  // Throws std::invalid_argument on a (near-)zero quaternion.
  static Rotation from_quaternion(double w, double x, double y, double z);
  // Throws std::invalid_argument on a zero axis.
  static Rotation from_axis_angle(const AxisAngle& aa);
  static Rotation from_axis_angle(const Eigen::Vector3d& axis, double angle);
  static Rotation about_x(double angle);
  static Rotation about_y(double angle);
  static Rotation about_z(double angle);

  Rotation inverse() const;

  // Rotate a 3-vector.
  Eigen::Vector3d apply(const Eigen::Vector3d& v) const;

  // Axis-angle form with angle in [0, pi]. Identity reports the z axis.
  AxisAngle to_axis_angle() const;
  // Rotation angle in [0, pi].
  double angle() const;
  Eigen::Vector3d axis() const;

  double w() const { return q_[0]; }
  double x() const { return q_[1]; }
  double y() const { return q_[2]; }
  double z() const { return q_[3]; }
  const std::array<double, 4>& q() const { return q_; }

  bool is_identity(double tol = kDefaultTol) const;

 private:
  Rotation(double w, double x, double y, double z, bool /*raw*/)
      : q_{w, x, y, z} {
    canonicalize();
  }
  void canonicalize();

  std::array<double, 4> q_;  // w, x, y, z
};

// a o b: apply b first, then a.
Rotation compose(const Rotation& a, const Rotation& b);
Rotation compose(const Rotation& a, const Rotation& b, const Rotation& c);
Rotation compose(const Rotation& a, const Rotation& b, const Rotation& c,
                 const Rotation& d);

// r composed with itself k times; negative k uses the inverse.
Rotation power(const Rotation& r, long long k);

// Geodesic angle in [0, pi] between a and b as SO(3) elements.
double distance(const Rotation& a, const Rotation& b);

bool approx_equal(const Rotation& a, const Rotation& b,
                  double tol = kDefaultTol);

// True iff r o r is the identity but r itself is not (a 180-degree rotation).
bool is_order_two(const Rotation& r, double tol = kDefaultTol);

}  // namespace probectl
