#include "probectl/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace probectl {

namespace {
constexpr double kSignEps = 1e-12;
}

void Rotation::canonicalize() {
  double n = std::sqrt(q_[0] * q_[0] + q_[1] * q_[1] + q_[2] * q_[2] +
                       q_[3] * q_[3]);
  if (n < kSignEps) {
    throw std::invalid_argument("Rotation: zero quaternion");
  }
  for (double& c : q_) c /= n;
  for (double c : q_) {
    if (std::abs(c) > kSignEps) {
      if (c < 0.0) {
        for (double& d : q_) d = -d;
      }
      break;
    }
  }
}

Rotation Rotation::from_quaternion(double w, double x, double y, double z) {
  return Rotation(w, x, y, z, true);
}

Rotation Rotation::from_axis_angle(const AxisAngle& aa) {
  return from_axis_angle(aa.axis, aa.angle);
}

Rotation Rotation::from_axis_angle(const Eigen::Vector3d& axis, double angle) {
  double n = axis.norm();
  if (n < kSignEps) {
    throw std::invalid_argument("Rotation: zero axis");
  }
  Eigen::Vector3d u = axis / n;
  double h = 0.5 * angle;
  double s = std::sin(h);
  return Rotation(std::cos(h), s * u.x(), s * u.y(), s * u.z(), true);
}

Rotation Rotation::about_x(double angle) {
  return from_axis_angle(Eigen::Vector3d::UnitX(), angle);
}
Rotation Rotation::about_y(double angle) {
  return from_axis_angle(Eigen::Vector3d::UnitY(), angle);
}
Rotation Rotation::about_z(double angle) {
  return from_axis_angle(Eigen::Vector3d::UnitZ(), angle);
}

Rotation Rotation::inverse() const {
  return Rotation(q_[0], -q_[1], -q_[2], -q_[3], true);
}

Eigen::Vector3d Rotation::apply(const Eigen::Vector3d& v) const {
  Eigen::Vector3d u(q_[1], q_[2], q_[3]);
  Eigen::Vector3d t = 2.0 * u.cross(v);
  return v + q_[0] * t + u.cross(t);
}

AxisAngle Rotation::to_axis_angle() const {
  double w = std::clamp(q_[0], -1.0, 1.0);
  double s = std::sqrt(std::max(0.0, 1.0 - w * w));
  if (s < kSignEps) {
    return {Eigen::Vector3d::UnitZ(), 0.0};
  }
  Eigen::Vector3d axis(q_[1] / s, q_[2] / s, q_[3] / s);
  double angle = 2.0 * std::acos(w);
  if (angle > M_PI) {
    angle = 2.0 * M_PI - angle;
    axis = -axis;
  }
  return {axis, angle};
}

double Rotation::angle() const { return to_axis_angle().angle; }

Eigen::Vector3d Rotation::axis() const { return to_axis_angle().axis; }

bool Rotation::is_identity(double tol) const {
  return distance(*this, Rotation()) <= tol;
}

Rotation compose(const Rotation& a, const Rotation& b) {
  const auto& p = a.q();
  const auto& q = b.q();
  double w = p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3];
  double x = p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2];
  double y = p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1];
  double z = p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0];
  return Rotation::from_quaternion(w, x, y, z);
}

Rotation compose(const Rotation& a, const Rotation& b, const Rotation& c) {
  return compose(a, compose(b, c));
}

Rotation compose(const Rotation& a, const Rotation& b, const Rotation& c,
                 const Rotation& d) {
  return compose(compose(a, b), compose(c, d));
}

Rotation power(const Rotation& r, long long k) {
  Rotation base = k < 0 ? r.inverse() : r;
  unsigned long long e =
      k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1ULL
            : static_cast<unsigned long long>(k);
  Rotation acc;
  while (e > 0) {
    if (e & 1ULL) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1ULL;
  }
  return acc;
}

double distance(const Rotation& a, const Rotation& b) {
  // Relative rotation a o b^-1; atan2 keeps full precision near zero, where
  // acos of the quaternion dot product loses half the significant digits.
  const auto& p = a.q();
  const auto& q = b.q();
  double w = p[0] * q[0] + p[1] * q[1] + p[2] * q[2] + p[3] * q[3];
  double x = -p[0] * q[1] + p[1] * q[0] - p[2] * q[3] + p[3] * q[2];
  double y = -p[0] * q[2] + p[1] * q[3] + p[2] * q[0] - p[3] * q[1];
  double z = -p[0] * q[3] - p[1] * q[2] + p[2] * q[1] + p[3] * q[0];
  return 2.0 * std::atan2(std::sqrt(x * x + y * y + z * z), std::abs(w));
}

bool approx_equal(const Rotation& a, const Rotation& b, double tol) {
  return distance(a, b) <= tol;
}

bool is_order_two(const Rotation& r, double tol) {
  return compose(r, r).is_identity(tol) && !r.is_identity(tol);
}

}  // namespace probectl
