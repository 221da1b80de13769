#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "swim/engine.hpp"
#include "swim/shape_path.hpp"
#include "swim/synthetic.hpp"

using namespace swim;

namespace {

ShapePath linear_path(double horizon) {
  ShapePath p;
  p.horizon = horizon;
  p.circle = {false};
  p.sample = [](double t) {
    return std::make_pair(ShapeVec::Constant(1, t), ShapeVec::Constant(1, 1.0));
  };
  p.accel = [](double) { return ShapeVec::Zero(1); };
  return p;
}

Field constant_field(const Vec3& c) {
  Field f;
  f.domain = ShapeDomain::scalar(-10.0, 10.0);
  f.velocity = [c](const Pose&, ShapeVecRef, ShapeVecRef sd) {
    return Vec3(c * sd[0]);
  };
  f.bound_K = 1.0;
  return f;
}

}  // namespace

TEST_CASE("integrate: zero rate holds the pose") {
  ShapePath still;
  still.horizon = 3.0;
  still.circle = {false};
  still.sample = [](double) {
    return std::make_pair(ShapeVec::Constant(1, 0.4), ShapeVec::Zero(1));
  };
  const Pose q0{0.3, {1.0, 2.0}};
  const Trajectory tr = integrate(constant_field({1.0, 2.0, 3.0}), still, q0, 1e-2);
  for (const auto& s : tr.samples) CHECK(pose_approx_equal(s.pose, q0, 1e-15));
}

TEST_CASE("integrate: constant-coefficient field is exact") {
  const Vec3 c(0.5, -1.0, 2.0);
  const Pose q0{0.1, {-1.0, 0.5}};
  const Trajectory tr = integrate(constant_field(c), linear_path(2.0), q0, 1e-2);
  for (const auto& s : tr.samples) {
    const Vec3 expect = q0.as_vector() + c * s.t;
    CHECK((s.pose.as_vector() - expect).norm() < 1e-12);
  }
}

TEST_CASE("integrate: first sample is the initial pose at t = 0") {
  const Trajectory tr =
      integrate(constant_field({1, 0, 0}), linear_path(1.0), Pose{2.0, {3.0, 4.0}}, 0.1);
  CHECK(tr.samples.front().t == 0.0);
  CHECK(tr.samples.front().pose.theta == 2.0);
  for (std::size_t i = 1; i < tr.samples.size(); ++i)
    CHECK(tr.samples[i].t > tr.samples[i - 1].t);
  CHECK(tr.samples.back().t == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integrate: non-finite field aborts with a diagnostic") {
  Field bad;
  bad.domain = ShapeDomain::scalar(-10, 10);
  bad.velocity = [](const Pose&, ShapeVecRef, ShapeVecRef) {
    return Vec3(std::nan(""), 0.0, 0.0);
  };
  CHECK_THROWS_WITH_AS(
      (void)integrate(bad, linear_path(1.0), Pose::identity(), 0.1),
      doctest::Contains("non-finite"), std::runtime_error);
  CHECK_THROWS_AS(
      (void)integrate(constant_field({1, 0, 0}), linear_path(1.0),
                      Pose::identity(), -0.1),
      std::invalid_argument);
}

TEST_CASE("reparameterize: identity time change is a no-op") {
  const ShapePath base = cosine_path(0.5, 1.0, 0.2, 0.1, 5.0);
  const ShapePath same = reparameterize(
      base, [](double t) { return t; }, [](double) { return 1.0; }, 5.0);
  for (double t : {0.0, 1.3, 4.9}) {
    CHECK((base.sample(t).first - same.sample(t).first).norm() == 0.0);
    CHECK((base.sample(t).second - same.sample(t).second).norm() == 0.0);
  }
}

TEST_CASE("reparameterize: beta(t) = 2t doubles the clock") {
  const Field f = synthetic_holonomy_field(SyntheticSpec{});
  const ShapePath base = cosine_path(1.0, 1.0, 0.0, 0.0, 8.0);
  const Trajectory q = integrate(f, base, Pose::identity(), 1e-3);
  const ShapePath fast = reparameterize(
      base, [](double t) { return 2.0 * t; }, [](double) { return 2.0; }, 4.0);
  const Trajectory qb = integrate(f, fast, Pose::identity(), 1e-3);
  double sup = 0.0;
  for (const auto& s : qb.samples)
    sup = std::max(sup, chart_distance(s.pose, q.eval(2.0 * s.t)));
  CHECK(sup < 1e-6);
}

TEST_CASE("reparameterize: non-monotone bounded beta keeps the orbit in a ball") {
  const Field f = synthetic_holonomy_field(SyntheticSpec{});
  const double T = 8.0;
  const ShapePath base = cosine_path(1.0, 1.0, 0.0, 0.0, T);
  const ShapePath flap = reparameterize(
      base, [T](double t) { return T * std::pow(std::sin(t), 2); },
      [T](double t) { return T * std::sin(2.0 * t); }, 30.0);
  const Trajectory qb = integrate(f, flap, Pose::identity(), 1e-3);
  const double bound = f.bound_K * path_effort(base);
  CHECK(qb.chart_diameter_bound() <= bound);
}

TEST_CASE("check_field_contract: linear field passes, quadratic control fails") {
  const Field linear = synthetic_holonomy_field(SyntheticSpec{});
  const ContractReport ok = check_field_contract(linear, linear.domain, 200);
  CHECK(ok.linear_ok());
  CHECK(ok.max_bound_ratio > 0.0);

  Field quad;
  quad.domain = ShapeDomain::scalar(-1.0, 1.0);
  quad.velocity = [](const Pose&, ShapeVecRef, ShapeVecRef sd) {
    return Vec3(sd[0] * sd[0], 0.0, 0.0);
  };
  const ContractReport bad = check_field_contract(quad, quad.domain, 200);
  CHECK_FALSE(bad.linear_ok());

  Field zero;
  zero.domain = ShapeDomain::scalar(-1.0, 1.0);
  zero.velocity = [](const Pose&, ShapeVecRef, ShapeVecRef) {
    return Vec3::Zero().eval();
  };
  const ContractReport z = check_field_contract(zero, zero.domain, 100);
  CHECK(z.linear_ok());
  CHECK(z.max_bound_ratio == 0.0);
}

TEST_CASE("integrate: classical 4th-order step halving") {
  const Field f = synthetic_holonomy_field(SyntheticSpec{0.1, 0.4, 0.9});
  const ShapePath path = cosine_path(1.2, 1.0, 0.3, 0.0, 2.0);
  const Pose q0{0.2, {0.0, 0.0}};
  const double h = 0.02;
  const Pose ref = integrate(f, path, q0, 0.25 * h).final();
  const double e1 = chart_distance(integrate(f, path, q0, h).final(), ref);
  const double e2 = chart_distance(integrate(f, path, q0, 0.5 * h).final(), ref);
  CHECK(e1 / e2 >= 12.0);
}

TEST_CASE("Trajectory::eval interpolates between nodes at integrator accuracy") {
  const Field f = synthetic_holonomy_field(SyntheticSpec{0.2, 0.5, 0.8});
  const ShapePath path = cosine_path(1.0, 1.3, 0.0, 0.0, 3.0);
  const Trajectory coarse = integrate(f, path, Pose::identity(), 1e-2);
  const Trajectory fine = integrate(f, path, Pose::identity(), 1e-4);
  double sup = 0.0;
  for (double t : {0.123, 0.777, 1.5051, 2.25, 2.9981})
    sup = std::max(sup, chart_distance(coarse.eval(t), fine.eval(t)));
  CHECK(sup < 1e-7);  // hermite nodes + slopes are 4th-order accurate
}

TEST_CASE("waveform samplers: finite difference of s matches sdot") {
  CHECK(path_rate_residual(cosine_path(1.0, 2.0, 0.1, 0.5, 6.0)) < 1e-6);
  CHECK(path_rate_residual(damped_path(1.0, 1.5, 0.2, 0.0, 10.0)) < 1e-6);
  CHECK(path_rate_residual(warped_cosine_path(1.0, 1.0, 0.4, 0.0, 6.0)) < 1e-6);
  CHECK(path_rate_residual(winding_path(1.0, 0.0, 10.0)) < 1e-9);
}

TEST_CASE("integrate: multi-dof shape paths are supported") {
  ShapePath two;
  two.horizon = 2.0;
  two.circle = {false, false};
  two.sample = [](double t) {
    ShapeVec s(2), sd(2);
    s << std::sin(t), std::cos(2.0 * t);
    sd << std::cos(t), -2.0 * std::sin(2.0 * t);
    return std::make_pair(s, sd);
  };
  Field f;
  f.domain.lo = ShapeVec::Constant(2, -1.0);
  f.domain.hi = ShapeVec::Constant(2, 1.0);
  f.domain.circle = {false, false};
  f.velocity = [](const Pose& q, ShapeVecRef s, ShapeVecRef sd) {
    const BodyTwist tw{0.1 * s[1] * sd[0], {sd[0] + 0.5 * sd[1], s[0] * sd[1]}};
    return world_map(q, tw);
  };
  f.bound_K = calibrate_bound(f, f.domain);
  const Trajectory tr = integrate(f, two, Pose::identity(), 1e-3);
  CHECK(tr.samples.back().t == doctest::Approx(2.0));
  CHECK(tr.samples.back().s.size() == 2);
  const ContractReport rep = check_field_contract(f, f.domain, 100);
  CHECK(rep.linear_ok());
}

TEST_CASE("shape_norm: circle coordinates contribute unit length") {
  ShapeVec s(2);
  s << 3.0, 123.0;
  CHECK(shape_norm(s, {false, true}) == doctest::Approx(std::sqrt(10.0)));
  CHECK(shape_norm(s, {false, false}) ==
        doctest::Approx(std::sqrt(9.0 + 123.0 * 123.0)));
}
