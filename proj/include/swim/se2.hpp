// Planar rigid-body placements and twists.

#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace swim {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double pi = std::numbers::pi;

/// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * pi);
  if (w <= -pi) w += 2.0 * pi;
  return w;
}

inline Mat2 rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Mat2 R;
  R << c, -s, s, c;
  return R;
}

/// 90-degree counterclockwise rotation of a vector: perp(x, y) = (-y, x).
inline Vec2 perp(const Vec2& x) { return Vec2(-x.y(), x.x()); }

/// Rigid placement of the body frame: rotation angle and frame origin.
/// theta is stored unconstrained in R; comparisons wrap it to (-pi, pi].
struct Pose {
  double theta{0.0};
  Vec2 r{0.0, 0.0};

  static Pose identity() { return {}; }

  [[nodiscard]] Vec3 as_vector() const { return Vec3(theta, r.x(), r.y()); }
  static Pose from_vector(const Vec3& v) { return {v[0], {v[1], v[2]}}; }
};

/// Group composition on SE(2).
inline Pose compose(const Pose& p1, const Pose& p2) {
  return {p1.theta + p2.theta, p1.r + rotation(p1.theta) * p2.r};
}

inline Pose inverse(const Pose& p) {
  return {-p.theta, -(rotation(-p.theta) * p.r)};
}

/// Equality up to angle wrapping.
inline bool pose_approx_equal(const Pose& a, const Pose& b, double tol) {
  return std::abs(wrap_angle(a.theta - b.theta)) <= tol &&
         (a.r - b.r).norm() <= tol;
}

/// Distance in the (theta, x, y) chart without wrapping; trajectories keep
/// theta unwrapped, so this is the metric used for diameters and bounds.
inline double chart_distance(const Pose& a, const Pose& b) {
  return (a.as_vector() - b.as_vector()).norm();
}

/// Rigid velocity expressed in the body frame: angular rate and linear
/// velocity of the frame origin.
struct BodyTwist {
  double omega{0.0};
  Vec2 v{0.0, 0.0};

  [[nodiscard]] bool finite() const {
    return std::isfinite(omega) && v.allFinite();
  }
};

inline BodyTwist operator+(const BodyTwist& a, const BodyTwist& b) {
  return {a.omega + b.omega, a.v + b.v};
}

inline BodyTwist operator*(double c, const BodyTwist& t) {
  return {c * t.omega, c * t.v};
}

/// Push a body twist to the world frame: theta_dot = omega, r_dot = R(theta) v.
inline Vec3 world_map(const Pose& q, const BodyTwist& t) {
  const Vec2 rdot = rotation(q.theta) * t.v;
  return Vec3(t.omega, rdot.x(), rdot.y());
}

}  // namespace swim
