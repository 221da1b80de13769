#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "swim/se2.hpp"

using namespace swim;

namespace {

Pose random_pose(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {3.0 * u(rng), {2.0 * u(rng), 2.0 * u(rng)}};
}

}  // namespace

TEST_CASE("compose: identity is neutral") {
  const Pose p{0.7, {1.0, -2.0}};
  CHECK(pose_approx_equal(compose(Pose::identity(), p), p, 1e-15));
  CHECK(pose_approx_equal(compose(p, Pose::identity()), p, 1e-15));
}

TEST_CASE("compose: quarter turns add") {
  const Pose quarter{0.5 * pi, {0.0, 0.0}};
  const Pose twice = compose(quarter, quarter);
  CHECK(twice.theta == doctest::Approx(pi).epsilon(1e-15));
  CHECK(twice.r.norm() == doctest::Approx(0.0));
}

TEST_CASE("compose: inverse recovers the identity") {
  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    const Pose p = random_pose(rng);
    CHECK(pose_approx_equal(compose(p, inverse(p)), Pose::identity(), 1e-13));
    CHECK(pose_approx_equal(compose(inverse(p), p), Pose::identity(), 1e-13));
  }
}

TEST_CASE("compose: associative and identity-neutral on random triples") {
  std::mt19937 rng(42);
  for (int i = 0; i < 1000; ++i) {
    const Pose a = random_pose(rng), b = random_pose(rng), c = random_pose(rng);
    const Pose left = compose(compose(a, b), c);
    const Pose right = compose(a, compose(b, c));
    CHECK(pose_approx_equal(left, right, 1e-12));
    CHECK(pose_approx_equal(compose(a, Pose::identity()), a, 1e-12));
  }
}

TEST_CASE("world_map: identity pose passes the twist through") {
  const Vec3 v = world_map(Pose::identity(), {1.0, {0.0, 0.0}});
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[1] == doctest::Approx(0.0));
  CHECK(v[2] == doctest::Approx(0.0));
}

TEST_CASE("world_map: quarter-turn frame rotates the linear part only") {
  const Pose q{0.5 * pi, {3.0, -1.0}};
  const Vec3 v = world_map(q, {0.0, {1.0, 0.0}});
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(v[2] == doctest::Approx(1.0));
}

TEST_CASE("world_map: exactly linear in the twist") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const Pose q = random_pose(rng);
    const BodyTwist t1{u(rng), {u(rng), u(rng)}};
    const BodyTwist t2{u(rng), {u(rng), u(rng)}};
    const double a = u(rng), b = u(rng);
    const Vec3 lhs = world_map(q, a * t1 + b * t2);
    const Vec3 rhs = a * world_map(q, t1) + b * world_map(q, t2);
    CHECK((lhs - rhs).norm() <= 1e-14 * (1.0 + rhs.norm()));
  }
}

TEST_CASE("wrap_angle lands in (-pi, pi]") {
  CHECK(wrap_angle(pi) == doctest::Approx(pi));
  CHECK(wrap_angle(-pi) == doctest::Approx(pi));
  CHECK(wrap_angle(3.0 * pi) == doctest::Approx(pi));
  CHECK(wrap_angle(0.1 + 8.0 * pi) == doctest::Approx(0.1));
  // equality of poses uses the wrapped angle
  CHECK(pose_approx_equal(Pose{2.0 * pi, {0, 0}}, Pose::identity(), 1e-12));
}
