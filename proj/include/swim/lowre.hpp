// Low-Reynolds model: grand resistance matrix and shape coupling assembled
// by resistive force theory over articulated slender links, and the
// resulting first-order swimmer field.

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "swim/boundary.hpp"
#include "swim/engine.hpp"
#include "swim/matrices.hpp"
#include "swim/numerics.hpp"
#include "swim/se2.hpp"

namespace swim {

/// Slender link hinged at the body-frame origin. The axis angle as a
/// function of shape is angle0 + angle_coeffs . s; per unit rate of shape
/// coordinate k the link turns about the origin at rate angle_coeffs[k].
struct LinkSpec {
  double length{1.0};
  double c_t{1.0};  // tangential drag per unit length per unit viscosity
  double c_n{2.0};  // normal drag per unit length per unit viscosity
  double base_offset{0.0};  // gap between the origin and the near end
  double angle0{0.0};
  Eigen::VectorXd angle_coeffs;

  void validate() const {
    if (!(length > 0.0))
      throw std::invalid_argument("LinkSpec: length must be > 0");
    if (!(c_t > 0.0 && c_t <= c_n))
      throw std::invalid_argument("LinkSpec: requires 0 < c_t <= c_n");
  }
};

/// Pointwise scaling of the normal drag coefficient; identity in free space.
using DragScale = std::function<double(const Vec2& body_point)>;

/// Drag integrals of one link against the rigid and mode velocity fields:
/// a 3x3 resistance contribution and a 3xm mode coupling. Closed-form
/// quadrature (two Gauss points per sub-segment, exact for the polynomial
/// free-space integrands).
inline void link_resistance(const LinkSpec& link, ShapeVecRef s, double mu,
                            Mat3& Mr, Eigen::Matrix3Xd& N,
                            const DragScale& scale = {}, int segments = 1) {
  link.validate();
  const Eigen::Index m = link.angle_coeffs.size();
  if (s.size() != m)
    throw std::invalid_argument("link_resistance: shape dof mismatch");

  const double psi = link.angle0 + link.angle_coeffs.dot(s);
  const Vec2 tangent(std::cos(psi), std::sin(psi));
  const Vec2 nrm = perp(tangent);

  const double w[2] = {Gauss2::node0, Gauss2::node1};
  const double seg = link.length / segments;
  for (int j = 0; j < segments; ++j) {
    for (double node : w) {
      const double arc = link.base_offset + (j + node) * seg;
      const Vec2 x = arc * tangent;
      double cn = mu * link.c_n;
      if (scale) cn *= scale(x);
      const double ct = mu * link.c_t;

      // Rigid basis fields: rotation about the origin, then unit translations.
      Vec2 u[3] = {perp(x), Vec2(1.0, 0.0), Vec2(0.0, 1.0)};
      auto drag = [&](const Vec2& vel) -> Vec2 {
        return ct * tangent * tangent.dot(vel) + cn * nrm * nrm.dot(vel);
      };
      const double dw = Gauss2::weight * seg;
      for (int a = 0; a < 3; ++a) {
        const Vec2 da = drag(u[a]);
        for (int b = a; b < 3; ++b) Mr(a, b) += dw * da.dot(u[b]);
        for (Eigen::Index k = 0; k < m; ++k)
          N(a, k) += dw * da.dot(link.angle_coeffs[k] * perp(x));
      }
    }
  }
  Mr = Mr.selfadjointView<Eigen::Upper>();
}

/// Articulated slender-body model: links sharing the origin hinge.
struct RftModel {
  std::vector<LinkSpec> links;
  double mu{1.0};

  [[nodiscard]] Eigen::Index dof() const {
    return links.empty() ? 0 : links.front().angle_coeffs.size();
  }
};

/// Assemble the grand resistance matrix and coupling at shape s.
inline GrandMatrices grand_resistance(const RftModel& model, ShapeVecRef s,
                                      const DragScale& scale = {},
                                      int segments = 1) {
  GrandMatrices gm;
  gm.N = Eigen::Matrix3Xd::Zero(3, model.dof());
  Mat3 Mr = Mat3::Zero();
  for (const LinkSpec& link : model.links)
    link_resistance(link, s, model.mu, Mr, gm.N, scale, segments);
  gm.Mr = 0.5 * (Mr + Mr.transpose());
  gm.require_spd("grand_resistance");
  return gm;
}

/// Two-link scallop: each arm is the major axis of one ellipse, hinged at
/// the origin. The single shape coordinate is the opening angle between the
/// arm axes.
inline RftModel make_scallop_rft(const ScallopGeometry& g, double c_t = 1.0,
                                 double c_n = 2.0, double mu = 1.0) {
  RftModel model;
  model.mu = mu;
  for (double sigma : {0.5, -0.5}) {
    LinkSpec link;
    link.length = 2.0 * g.a;
    link.c_t = c_t;
    link.c_n = c_n;
    link.base_offset = g.hinge_offset - g.a;
    link.angle0 = 0.0;
    link.angle_coeffs = Eigen::VectorXd::Constant(1, sigma);
    model.links.push_back(link);
  }
  return model;
}

namespace detail {

inline void require_in_domain(ShapeVecRef s, const ShapeDomain& dom) {
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] < dom.lo[i] - 1e-6 || s[i] > dom.hi[i] + 1e-6)
      throw std::domain_error("shape value outside the allowed range");
}

}  // namespace detail

/// Free-space first-order field: q_dot = world(-Mr(s)^{-1} N(s) sdot).
/// The viscosity cancels exactly in the solve.
inline Field lowre_field(const RftModel& model, const ShapeDomain& domain) {
  Field f;
  f.domain = domain;
  f.velocity = [model, domain](const Pose& q, ShapeVecRef s, ShapeVecRef sd) {
    detail::require_in_domain(s, domain);
    const GrandMatrices gm = grand_resistance(model, s);
    return world_map(q, gm.respond(sd));
  };
  f.bound_K = calibrate_bound(f, domain);
  return f;
}

inline constexpr double lowre_wall_kappa = 0.5;
inline constexpr double lowre_wall_range = 5.0;  // cutoff scale, in link lengths

/// Wall-proximity scaling of the normal drag: 1 + kappa (L/gap) exp(-gap/5L),
/// evaluated at the world position of each quadrature point. Smooth in q and
/// negligible beyond a few link lengths.
inline DragScale wall_drag_scale(const BodyBoundary& obstacle, const Pose& q,
                                 double link_length, double eps_gap) {
  const Mat2 R = rotation(q.theta);
  const Vec2 r = q.r;
  return [&obstacle, R, r, link_length, eps_gap](const Vec2& x_body) {
    const double gap = distance_to_boundary(R * x_body + r, obstacle);
    if (gap < eps_gap)
      throw std::runtime_error("lowre obstacle: gap below proximity limit");
    return 1.0 + lowre_wall_kappa * (link_length / gap) *
                     std::exp(-gap / (lowre_wall_range * link_length));
  };
}

/// First-order field near a fixed obstacle: the resistance pair becomes
/// configuration dependent, Mr(s, q) and N(s, q), but the dynamics keeps the
/// shape-rate-linear form.
inline Field lowre_field_with_obstacle(const RftModel& model,
                                       const BodyBoundary& obstacle,
                                       const ShapeDomain& domain,
                                       double eps_gap = -1.0) {
  const double L = model.links.empty() ? 1.0 : model.links.front().length;
  if (eps_gap <= 0.0) eps_gap = 0.05 * L;
  Field f;
  f.domain = domain;
  f.velocity = [model, obstacle, domain, eps_gap,
                L](const Pose& q, ShapeVecRef s, ShapeVecRef sd) {
    detail::require_in_domain(s, domain);
    const GrandMatrices gm = grand_resistance(
        model, s, wall_drag_scale(obstacle, q, L, eps_gap), 4);
    return world_map(q, gm.respond(sd));
  };
  f.bound_K = calibrate_bound(f, domain);
  return f;
}

}  // namespace swim
