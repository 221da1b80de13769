#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "swim/boundary.hpp"

using namespace swim;

namespace {

ScallopGeometry default_geom(int panels = 48, double opening = 0.5 * pi) {
  ScallopGeometry g;
  g.panel_count = panels;
  g.alpha = opening;
  return g;
}

/// Independent midpoint-rule area quadrature of a rigid field's momenta over
/// an exact ellipse (mapped polar grid, exact for these low-order
/// integrands at modest resolution).
struct EllipseQuadrature {
  Vec2 center;
  double axis_angle, a, b;

  template <class F>
  double integrate(const F& f) const {
    const int nu = 24, nv = 96;
    const Mat2 R = rotation(axis_angle);
    double acc = 0.0;
    for (int i = 0; i < nu; ++i) {
      const double u = (i + 0.5) / nu;
      for (int j = 0; j < nv; ++j) {
        const double v = 2.0 * pi * (j + 0.5) / nv;
        const Vec2 x =
            center + R * Vec2(a * u * std::cos(v), b * u * std::sin(v));
        acc += f(x) * (a * b * u) * (1.0 / nu) * (2.0 * pi / nv);
      }
    }
    return acc;
  }
};

}  // namespace

TEST_CASE("build_scallop: mirror symmetry of the two arms at alpha = pi/2") {
  const BodyBoundary b = build_scallop(default_geom());
  for (const Panel& p : b.panels) {
    if (p.loop != 0) continue;
    const Vec2 mirrored(p.mid.x(), -p.mid.y());
    double best = 1e9;
    for (const Panel& q : b.panels)
      if (q.loop == 1) best = std::min(best, (q.mid - mirrored).norm());
    CHECK(best < 1e-12);
  }
}

TEST_CASE("build_scallop: unit opening-rate mode satisfies flux compatibility") {
  for (double opening : {pi / 6.0, 0.5 * pi, 5.0 * pi / 6.0}) {
    const BodyBoundary b = build_scallop(default_geom(48, opening));
    CHECK(flux_residual(b, mode_boundary_data(b, 0)) < 1e-10);
  }
}

TEST_CASE("build_scallop: perimeter converges under panel doubling") {
  const double p64 = perimeter(build_scallop(default_geom(64)));
  const double p128 = perimeter(build_scallop(default_geom(128)));
  CHECK(std::abs(p128 - p64) / p64 < 0.005);
}

TEST_CASE("build_scallop: arms-overlap error below the contact angle") {
  CHECK_THROWS_AS((void)build_scallop(default_geom(48, 0.25)),
                  std::domain_error);
  CHECK_NOTHROW((void)build_scallop(default_geom(48, pi / 6.0)));
}

TEST_CASE("build_scallop: rejects invalid geometry") {
  ScallopGeometry g;
  g.b = 2.0;  // b > a
  CHECK_THROWS_AS((void)build_scallop(g), std::invalid_argument);
  g = ScallopGeometry{};
  g.panel_count = 4;
  CHECK_THROWS_AS((void)build_scallop(g), std::invalid_argument);
  g = ScallopGeometry{};
  g.hinge_offset = g.a;  // no clearance at the hinge
  CHECK_THROWS_AS((void)build_scallop(g), std::invalid_argument);
}

TEST_CASE("panel normals point into the body") {
  const BodyBoundary b = build_scallop(default_geom());
  for (int loop = 0; loop < 2; ++loop) {
    const LoopMoments m = loop_moments(b, loop);
    CHECK(m.area > 0.0);  // counterclockwise
    int inward = 0, total = 0;
    for (const Panel& p : b.panels) {
      if (p.loop != loop) continue;
      ++total;
      if (p.normal.dot(m.centroid - p.mid) > 0.0) ++inward;
    }
    CHECK(inward == total);  // consistent sign on convex loops
  }
}

TEST_CASE("loop moments reproduce the ellipse area and inertia") {
  const BodyBoundary b = build_scallop(default_geom(256));
  const double area = total_area(b);
  CHECK(area ==
        doctest::Approx(2.0 * pi * 1.0 * 0.2).epsilon(1e-3));
}

TEST_CASE("rigid_boundary_data: zero twist, circle spin and translation") {
  BodyBoundary circle;
  circle.loop_count = 1;
  detail::append_ellipse_loop(circle.panels, {0.0, 0.0}, 0.0, 1.3, 1.3, 64, 0);

  const Eigen::VectorXd zero =
      rigid_boundary_data(circle, BodyTwist{0.0, {0.0, 0.0}});
  CHECK(zero.norm() == 0.0);

  // spinning a circle about its center moves the boundary tangentially
  const Eigen::VectorXd spin =
      rigid_boundary_data(circle, BodyTwist{1.0, {0.0, 0.0}});
  CHECK(spin.lpNorm<Eigen::Infinity>() < 1e-14);

  const Eigen::VectorXd tx =
      rigid_boundary_data(circle, BodyTwist{0.0, {1.0, 0.0}});
  for (std::size_t i = 0; i < circle.panels.size(); ++i)
    CHECK(tx[i] == doctest::Approx(circle.panels[i].normal.x()));
}

TEST_CASE("rigid_boundary_data is linear in the twist") {
  const BodyBoundary b = build_scallop(default_geom(16));
  const BodyTwist t1{0.3, {1.0, -2.0}}, t2{-1.1, {0.5, 0.25}};
  const Eigen::VectorXd lhs = rigid_boundary_data(b, 2.0 * t1 + (-3.0) * t2);
  const Eigen::VectorXd rhs =
      2.0 * rigid_boundary_data(b, t1) - 3.0 * rigid_boundary_data(b, t2);
  CHECK((lhs - rhs).norm() < 1e-13);
}

TEST_CASE("check_self_propulsion: corrected scallop mode carries no momentum") {
  for (double opening : {pi / 6.0, 0.4 * pi, 0.5 * pi, 0.7 * pi}) {
    const BodyBoundary b = build_scallop(default_geom(64, opening));
    const auto res = check_self_propulsion(b, 1.0);
    REQUIRE(res.size() == 1);
    CHECK(res[0].linear.norm() < 1e-8);
    CHECK(std::abs(res[0].angular) < 1e-8);
  }
}

TEST_CASE("check_self_propulsion: symmetric flapping has zero lateral momentum") {
  // the raw +-1/2 arm rotation about the hinge is mirror symmetric, so its
  // linear momentum lies along the symmetry axis
  BodyBoundary b = build_scallop(default_geom(64));
  std::vector<Vec2> raw_mode(b.panels.size());
  std::vector<LoopMotion> raw(2);
  for (int l = 0; l < 2; ++l) {
    const double sigma = (l == 0) ? 0.5 : -0.5;
    raw[l] = {sigma, -sigma * perp(b.hinge)};
  }
  for (std::size_t i = 0; i < b.panels.size(); ++i)
    raw_mode[i] = raw[b.panels[i].loop].at(b.panels[i].mid);
  b.mode_velocities.push_back(raw_mode);
  b.mode_loop_motion.push_back(raw);
  const auto res = check_self_propulsion(b, 1.0);
  CHECK(std::abs(res[1].linear.y()) < 1e-10);
  CHECK(std::abs(res[1].linear.x()) > 1e-3);  // uncorrected mode does drift
}

TEST_CASE("check_self_propulsion: rigid translation mode reports the mass") {
  BodyBoundary b = build_scallop(default_geom(64));
  const double density = 1.3;
  const double mass = density * total_area(b);
  // enter a pure translation as an extra "mode"
  std::vector<Vec2> mode(b.panels.size(), Vec2(1.0, 0.0));
  b.mode_velocities.push_back(mode);
  b.mode_loop_motion.push_back(
      {LoopMotion{0.0, {1.0, 0.0}}, LoopMotion{0.0, {1.0, 0.0}}});
  const auto res = check_self_propulsion(b, density);
  REQUIRE(res.size() == 2);
  CHECK(res[1].linear.x() == doctest::Approx(mass).epsilon(1e-12));
  CHECK(res[1].linear.y() == doctest::Approx(0.0));
}

TEST_CASE("polygon momenta agree with an independent area quadrature") {
  // one arm of the scallop, raw rotation about the hinge at rate 1/2
  const ScallopGeometry g = default_geom(256);
  const BodyBoundary b = build_scallop(g);
  const Vec2 com_shift = -Vec2(0, 0);  // frame origin is the com already
  (void)com_shift;

  // reconstruct arm 0's center/axis in the recentered frame
  LoopMoments m0 = loop_moments(b, 0);
  EllipseQuadrature quad{m0.centroid, 0.25 * pi, g.a, g.b};

  const double area_quad = quad.integrate([](const Vec2&) { return 1.0; });
  CHECK(area_quad == doctest::Approx(pi * g.a * g.b).epsilon(1e-10));
  CHECK(m0.area == doctest::Approx(area_quad).epsilon(1e-3));

  // momentum of the stored (corrected) mode on arm 0 via the quadrature
  const LoopMotion motion = b.mode_loop_motion[0][0];
  const double px = quad.integrate(
      [&](const Vec2& x) { return motion.at(x).x(); });
  const double py = quad.integrate(
      [&](const Vec2& x) { return motion.at(x).y(); });
  // compare with the polygon-moment value used by check_self_propulsion
  const Vec2 poly = m0.area * motion.v +
                    motion.omega * m0.area * perp(m0.centroid);
  CHECK(px == doctest::Approx(poly.x()).epsilon(2e-3));
  CHECK(py == doctest::Approx(poly.y()).epsilon(2e-3));
}

TEST_CASE("boundary_gap and distance helpers") {
  const BodyBoundary box1 = build_rectangle({0.0, 0.0}, 1.0, 1.0, 16);
  const BodyBoundary box2 = build_rectangle({3.0, 0.0}, 1.0, 1.0, 16);
  CHECK(boundary_gap(box1, box2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(distance_to_boundary({0.0, 2.0}, box1) == doctest::Approx(1.5));
  const BodyBoundary overlapping = build_rectangle({0.8, 0.0}, 1.0, 1.0, 16);
  CHECK(boundary_gap(box1, overlapping) == 0.0);
}

TEST_CASE("transform places panels rigidly") {
  const BodyBoundary b = build_scallop(default_geom(16));
  const Pose q{0.3, {2.0, -1.0}};
  const BodyBoundary w = transform(b, q);
  const Mat2 R = rotation(q.theta);
  for (std::size_t i = 0; i < b.panels.size(); ++i) {
    CHECK((w.panels[i].mid - (R * b.panels[i].mid + q.r)).norm() < 1e-14);
    CHECK((w.panels[i].normal - R * b.panels[i].normal).norm() < 1e-14);
    CHECK(w.panels[i].length == doctest::Approx(b.panels[i].length));
  }
}
