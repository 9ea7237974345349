#include <doctest.h>

#include <cmath>
#include <random>

#include "probectl/rotation.hpp"

using namespace probectl;

namespace {

Rotation random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return Rotation::from_quaternion(g(rng), g(rng), g(rng), g(rng));
}

}  // namespace

TEST_CASE("axis-angle construction") {
  CHECK(Rotation::from_axis_angle(Eigen::Vector3d::UnitZ(), 0.0).is_identity());
  Rotation u = Rotation::about_z(M_PI / 4);
  CHECK(u.angle() == doctest::Approx(M_PI / 4).epsilon(1e-12));
  CHECK((u.axis() - Eigen::Vector3d::UnitZ()).norm() < 1e-12);
  CHECK(compose(Rotation::about_x(M_PI), Rotation::about_x(M_PI)).is_identity());
  CHECK_THROWS_AS(Rotation::from_axis_angle(Eigen::Vector3d::Zero(), 1.0),
                  std::invalid_argument);
}

TEST_CASE("composition") {
  CHECK(approx_equal(compose(Rotation::about_z(M_PI / 2),
                             Rotation::about_z(M_PI / 4)),
                     Rotation::about_z(3 * M_PI / 4)));
  CHECK(approx_equal(compose(Rotation::about_x(M_PI), Rotation::about_y(M_PI)),
                     Rotation::about_z(M_PI)));
  // Commutator of a 180-degree and an orthogonal 90-degree rotation is a
  // 180-degree rotation.
  Rotation comm = compose(Rotation::about_x(M_PI), Rotation::about_z(M_PI / 2),
                          Rotation::about_x(M_PI), Rotation::about_z(-M_PI / 2));
  CHECK(is_order_two(comm));
  CHECK(comm.angle() == doctest::Approx(M_PI).epsilon(1e-12));
}

TEST_CASE("power") {
  CHECK(power(Rotation::about_z(M_PI / 4), 8).is_identity());
  std::mt19937_64 rng(1);
  CHECK(power(random_rotation(rng), 0).is_identity());
  CHECK(approx_equal(power(Rotation::about_x(M_PI), 3), Rotation::about_x(M_PI)));
  CHECK(approx_equal(power(Rotation::about_z(M_PI / 3), -2),
                     Rotation::about_z(-2 * M_PI / 3)));
}

TEST_CASE("order-two predicate") {
  CHECK(is_order_two(Rotation::about_x(M_PI)));
  CHECK(!is_order_two(Rotation()));
  CHECK(!is_order_two(Rotation::about_z(M_PI / 4)));
}

TEST_CASE("distance") {
  Rotation r = Rotation::about_y(0.7);
  CHECK(distance(r, r) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(distance(Rotation(), Rotation::about_x(M_PI)) ==
        doctest::Approx(M_PI).epsilon(1e-9));
  CHECK(distance(Rotation::about_z(M_PI / 4), Rotation::about_z(M_PI / 2)) ==
        doctest::Approx(M_PI / 4).epsilon(1e-9));
}

TEST_CASE("algebraic properties over random elements") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> exp_dist(-16, 16);
  for (int trial = 0; trial < 50; ++trial) {
    Rotation a = random_rotation(rng), b = random_rotation(rng),
             c = random_rotation(rng);
    CHECK(distance(compose(compose(a, b), c), compose(a, compose(b, c))) <
          1e-10);
    CHECK(distance(a, b) == doctest::Approx(distance(b, a)).epsilon(1e-10));
    CHECK(distance(compose(c, a), compose(c, b)) ==
          doctest::Approx(distance(a, b)).epsilon(1e-9));

    int m = exp_dist(rng), n = exp_dist(rng);
    CHECK(approx_equal(power(a, m + n), compose(power(a, m), power(a, n)),
                       1e-9));
  }
}

TEST_CASE("orthogonal involutions commute") {
  Rotation rx = Rotation::about_x(M_PI), rz = Rotation::about_z(M_PI);
  CHECK(approx_equal(compose(rx, rz), compose(rz, rx)));
  Rotation d = Rotation::from_axis_angle(
      Eigen::Vector3d(1, 1, 0).normalized(), M_PI);
  Rotation e = Rotation::from_axis_angle(
      Eigen::Vector3d(1, -1, 0).normalized(), M_PI);
  CHECK(approx_equal(compose(d, e), compose(e, d)));
}

TEST_CASE("canonical sign makes equality well defined") {
  Rotation a = Rotation::from_quaternion(0.5, 0.5, 0.5, 0.5);
  Rotation b = Rotation::from_quaternion(-0.5, -0.5, -0.5, -0.5);
  CHECK(a.q() == b.q());
  CHECK(a.w() >= 0.0);
  Rotation c = Rotation::from_quaternion(0.0, -1.0, 0.0, 0.0);
  CHECK(c.x() > 0.0);  // first nonzero component positive
}

TEST_CASE("axis-angle round trip") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Rotation r = random_rotation(rng);
    AxisAngle aa = r.to_axis_angle();
    CHECK(aa.angle >= 0.0);
    CHECK(aa.angle <= M_PI + 1e-12);
    CHECK(approx_equal(Rotation::from_axis_angle(aa), r, 1e-10));
  }
}
