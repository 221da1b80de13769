// Panelized closed boundaries: the articulated two-ellipse scallop, fixed
// rectangular obstacles, per-panel deformation modes, and the area moments
// used for momentum bookkeeping.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "swim/se2.hpp"

namespace swim {

/// Straight boundary segment. Loops are traversed counterclockwise and the
/// unit normal points into the body (out of the fluid).
struct Panel {
  Vec2 p0, p1;
  Vec2 mid;
  Vec2 normal;
  double length{0.0};
  int loop{0};
};

/// Rigid velocity field u(x) = v + omega * perp(x), used to extend boundary
/// mode data into the interior of a rigidly moving loop.
struct LoopMotion {
  double omega{0.0};
  Vec2 v{0.0, 0.0};

  [[nodiscard]] Vec2 at(const Vec2& x) const { return v + omega * perp(x); }
};

/// Panelized closed curve(s) with per-panel deformation-mode velocities.
struct BodyBoundary {
  std::vector<Panel> panels;
  int loop_count{0};
  /// mode_velocities[k][i]: velocity of panel i's midpoint per unit rate of
  /// shape coordinate k.
  std::vector<std::vector<Vec2>> mode_velocities;
  /// Rigid decomposition of mode k restricted to each loop; empty for
  /// boundaries whose modes are not loopwise rigid.
  std::vector<std::vector<LoopMotion>> mode_loop_motion;
  /// Articulation point, when the boundary has one (body-frame coordinates).
  Vec2 hinge{0.0, 0.0};

  [[nodiscard]] std::size_t panel_count() const { return panels.size(); }
  [[nodiscard]] int mode_count() const {
    return static_cast<int>(mode_velocities.size());
  }
};

/// Signed area, centroid and second moment about the origin of one loop,
/// computed exactly for the panel polygon by Green's theorem.
struct LoopMoments {
  double area{0.0};
  Vec2 centroid{0.0, 0.0};
  double second_moment{0.0};  // integral of |x|^2 dA about the origin
};

inline LoopMoments loop_moments(const BodyBoundary& b, int loop) {
  double a2 = 0.0;     // 2 * area
  Vec2 c6{0.0, 0.0};   // 6 * area * centroid
  double sxx = 0.0, syy = 0.0;
  for (const Panel& p : b.panels) {
    if (p.loop != loop) continue;
    const double cr = p.p0.x() * p.p1.y() - p.p1.x() * p.p0.y();
    a2 += cr;
    c6 += cr * (p.p0 + p.p1);
    sxx += cr * (p.p0.x() * p.p0.x() + p.p0.x() * p.p1.x() +
                 p.p1.x() * p.p1.x());
    syy += cr * (p.p0.y() * p.p0.y() + p.p0.y() * p.p1.y() +
                 p.p1.y() * p.p1.y());
  }
  LoopMoments m;
  m.area = 0.5 * a2;
  m.centroid = (m.area != 0.0) ? Vec2(c6 / (6.0 * m.area)) : Vec2(0.0, 0.0);
  m.second_moment = (sxx + syy) / 12.0;
  return m;
}

inline double total_area(const BodyBoundary& b) {
  double a = 0.0;
  for (int l = 0; l < b.loop_count; ++l) a += loop_moments(b, l).area;
  return a;
}

inline double perimeter(const BodyBoundary& b) {
  double len = 0.0;
  for (const Panel& p : b.panels) len += p.length;
  return len;
}

/// Per-panel normal velocity of a rigid body twist: (omega*perp(x) + v) . n.
inline Eigen::VectorXd rigid_boundary_data(const BodyBoundary& b,
                                           const BodyTwist& t) {
  Eigen::VectorXd data(b.panels.size());
  for (std::size_t i = 0; i < b.panels.size(); ++i) {
    const Panel& p = b.panels[i];
    data[i] = (t.omega * perp(p.mid) + t.v).dot(p.normal);
  }
  return data;
}

/// Per-panel normal velocity of deformation mode k.
inline Eigen::VectorXd mode_boundary_data(const BodyBoundary& b, int k) {
  Eigen::VectorXd data(b.panels.size());
  for (std::size_t i = 0; i < b.panels.size(); ++i)
    data[i] = b.mode_velocities[k][i].dot(b.panels[i].normal);
  return data;
}

/// Largest per-loop net flux of the given per-panel normal data.
inline double flux_residual(const BodyBoundary& b,
                            const Eigen::VectorXd& data) {
  std::vector<double> per_loop(b.loop_count, 0.0);
  for (std::size_t i = 0; i < b.panels.size(); ++i)
    per_loop[b.panels[i].loop] += data[i] * b.panels[i].length;
  double worst = 0.0;
  for (double f : per_loop) worst = std::max(worst, std::abs(f));
  return worst;
}

/// Deformation momentum residuals of one mode, per unit rate.
struct PropulsionResidual {
  Vec2 linear{0.0, 0.0};
  double angular{0.0};
};

/// Area-quadrature momenta of each deformation mode at the given uniform
/// density. Requires loopwise-rigid modes; the quadrature is the exact
/// polygon integral of the rigid field over each loop.
inline std::vector<PropulsionResidual> check_self_propulsion(
    const BodyBoundary& b, double density) {
  if (b.mode_loop_motion.size() != b.mode_velocities.size())
    throw std::invalid_argument(
        "check_self_propulsion: modes lack a loopwise rigid decomposition");
  std::vector<PropulsionResidual> out;
  for (const auto& motions : b.mode_loop_motion) {
    PropulsionResidual r;
    for (int l = 0; l < b.loop_count; ++l) {
      const LoopMoments m = loop_moments(b, l);
      const LoopMotion& w = motions[l];
      r.linear += density * (m.area * w.v + w.omega * m.area * perp(m.centroid));
      r.angular += density * (m.area * (m.centroid.x() * w.v.y() -
                                        m.centroid.y() * w.v.x()) +
                              w.omega * m.second_moment);
    }
    out.push_back(r);
  }
  return out;
}

namespace detail {

inline bool segments_intersect(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                               const Vec2& b1) {
  auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    const double v = (q.x() - p.x()) * (r.y() - p.y()) -
                     (q.y() - p.y()) * (r.x() - p.x());
    return (v > 0.0) - (v < 0.0);
  };
  const int o1 = orient(a0, a1, b0), o2 = orient(a0, a1, b1);
  const int o3 = orient(b0, b1, a0), o4 = orient(b0, b1, a1);
  return o1 != o2 && o3 != o4;
}

inline double point_segment_distance(const Vec2& x, const Vec2& p0,
                                     const Vec2& p1) {
  const Vec2 d = p1 - p0;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return (x - p0).norm();
  const double t = std::clamp((x - p0).dot(d) / len2, 0.0, 1.0);
  return (x - (p0 + t * d)).norm();
}

}  // namespace detail

/// Smallest distance from a point to the panels of a boundary.
inline double distance_to_boundary(const Vec2& x, const BodyBoundary& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const Panel& p : b.panels)
    best = std::min(best, detail::point_segment_distance(x, p.p0, p.p1));
  return best;
}

/// Smallest gap between two boundaries (endpoint-to-segment, both ways).
inline double boundary_gap(const BodyBoundary& a, const BodyBoundary& bb) {
  double best = std::numeric_limits<double>::infinity();
  for (const Panel& pa : a.panels)
    for (const Panel& pb : bb.panels) {
      if (detail::segments_intersect(pa.p0, pa.p1, pb.p0, pb.p1)) return 0.0;
      best = std::min({best,
                       detail::point_segment_distance(pa.p0, pb.p0, pb.p1),
                       detail::point_segment_distance(pa.p1, pb.p0, pb.p1),
                       detail::point_segment_distance(pb.p0, pa.p0, pa.p1),
                       detail::point_segment_distance(pb.p1, pa.p0, pa.p1)});
    }
  return best;
}

/// Rigidly place a boundary in the world frame. Mode velocities rotate with
/// the body; loop motions are dropped (they are body-frame quantities).
inline BodyBoundary transform(const BodyBoundary& b, const Pose& q) {
  const Mat2 R = rotation(q.theta);
  BodyBoundary out = b;
  out.mode_loop_motion.clear();
  for (Panel& p : out.panels) {
    p.p0 = R * p.p0 + q.r;
    p.p1 = R * p.p1 + q.r;
    p.mid = R * p.mid + q.r;
    p.normal = R * p.normal;
  }
  for (auto& mode : out.mode_velocities)
    for (Vec2& v : mode) v = R * v;
  return out;
}

/// Merge two boundaries into one multi-loop boundary. Modes of the second
/// argument are discarded (it is the fixed obstacle).
inline BodyBoundary merge(const BodyBoundary& body,
                          const BodyBoundary& fixed) {
  BodyBoundary out = body;
  for (Panel p : fixed.panels) {
    p.loop += body.loop_count;
    out.panels.push_back(p);
  }
  out.loop_count += fixed.loop_count;
  const Vec2 zero(0.0, 0.0);
  for (auto& mode : out.mode_velocities)
    mode.resize(out.panels.size(), zero);
  return out;
}

// ---------------------------------------------------------------------------
// Two-ellipse scallop
// ---------------------------------------------------------------------------

/// Articulated scallop: two congruent ellipses hinged at the origin of the
/// construction frame, arm axes at +/- alpha/2 about the bisector. alpha is
/// the opening angle between the two arm axes.
struct ScallopGeometry {
  double a{1.0};             // ellipse semi-major axis, along the arm
  double b{0.2};             // ellipse semi-minor axis
  double hinge_offset{1.5};  // distance from hinge to each ellipse center
  int panel_count{48};       // panels per arm
  double alpha{0.5 * pi};    // opening angle between the arm axes

  [[nodiscard]] ScallopGeometry at_opening(double opening) const {
    ScallopGeometry g = *this;
    g.alpha = opening;
    return g;
  }
};

inline constexpr double hinge_clearance_factor = 1e-3;

namespace detail {

inline void append_ellipse_loop(std::vector<Panel>& panels, const Vec2& center,
                                double axis_angle, double a, double b, int n,
                                int loop) {
  const Mat2 R = rotation(axis_angle);
  std::vector<Vec2> pts(n);
  for (int j = 0; j < n; ++j) {
    const double tau = 2.0 * pi * j / n;
    pts[j] = center + R * Vec2(a * std::cos(tau), b * std::sin(tau));
  }
  for (int j = 0; j < n; ++j) {
    Panel p;
    p.p0 = pts[j];
    p.p1 = pts[(j + 1) % n];
    p.mid = 0.5 * (p.p0 + p.p1);
    const Vec2 d = p.p1 - p.p0;
    p.length = d.norm();
    p.normal = Vec2(-d.y(), d.x()) / p.length;  // into the body for CCW loops
    p.loop = loop;
    panels.push_back(p);
  }
}

}  // namespace detail

/// Build the panelized scallop at the geometry's opening angle.
///
/// The body frame is centered on the area centroid and the single
/// deformation mode is the unit opening rate (each arm turning about the
/// hinge at +/- 1/2), projected onto the subspace of zero deformation linear
/// and angular momentum at uniform density.
inline BodyBoundary build_scallop(const ScallopGeometry& g) {
  if (!(g.a > g.b && g.b > 0.0))
    throw std::invalid_argument("build_scallop: requires a > b > 0");
  if (g.panel_count < 8)
    throw std::invalid_argument("build_scallop: requires panel_count >= 8");
  if (!(g.alpha > 0.0 && g.alpha < pi))
    throw std::invalid_argument("build_scallop: opening must lie in (0, pi)");
  if (g.hinge_offset < g.a * (1.0 + hinge_clearance_factor))
    throw std::invalid_argument(
        "build_scallop: hinge_offset leaves no clearance at the hinge");

  BodyBoundary b;
  b.loop_count = 2;
  const double half = 0.5 * g.alpha;
  detail::append_ellipse_loop(b.panels, g.hinge_offset * Vec2(std::cos(half), std::sin(half)),
                              half, g.a, g.b, g.panel_count, 0);
  detail::append_ellipse_loop(b.panels, g.hinge_offset * Vec2(std::cos(-half), std::sin(-half)),
                              -half, g.a, g.b, g.panel_count, 1);

  // Arms must not touch at this opening.
  for (const Panel& pa : b.panels) {
    if (pa.loop != 0) continue;
    for (const Panel& pb : b.panels) {
      if (pb.loop != 1) continue;
      if (detail::segments_intersect(pa.p0, pa.p1, pb.p0, pb.p1))
        throw std::domain_error(
            "build_scallop: arms overlap at opening " + std::to_string(g.alpha));
    }
  }

  // Recenter on the area centroid so the frame origin is the center of mass.
  LoopMoments m0 = loop_moments(b, 0), m1 = loop_moments(b, 1);
  const Vec2 com =
      (m0.area * m0.centroid + m1.area * m1.centroid) / (m0.area + m1.area);
  for (Panel& p : b.panels) {
    p.p0 -= com;
    p.p1 -= com;
    p.mid -= com;
  }
  const Vec2 hinge = -com;

  // Raw opening mode: arm 0 turns about the hinge at +1/2, arm 1 at -1/2.
  m0 = loop_moments(b, 0);
  m1 = loop_moments(b, 1);
  const LoopMoments mom[2] = {m0, m1};
  LoopMotion raw[2];
  for (int l = 0; l < 2; ++l) {
    const double sigma = (l == 0) ? 0.5 : -0.5;
    raw[l] = {sigma, -sigma * perp(hinge)};
  }

  // Project out the net linear and angular momentum of the raw mode.
  double area_tot = 0.0, inertia_tot = 0.0, ang = 0.0;
  Vec2 lin(0.0, 0.0);
  for (int l = 0; l < 2; ++l) {
    area_tot += mom[l].area;
    inertia_tot += mom[l].second_moment;
    lin += mom[l].area * raw[l].v + raw[l].omega * mom[l].area * perp(mom[l].centroid);
    ang += mom[l].area * (mom[l].centroid.x() * raw[l].v.y() -
                          mom[l].centroid.y() * raw[l].v.x()) +
           raw[l].omega * mom[l].second_moment;
  }
  const Vec2 v0 = lin / area_tot;
  const double omega0 = ang / inertia_tot;

  std::vector<LoopMotion> corrected(2);
  for (int l = 0; l < 2; ++l)
    corrected[l] = {raw[l].omega - omega0, raw[l].v - v0};

  std::vector<Vec2> mode(b.panels.size());
  for (std::size_t i = 0; i < b.panels.size(); ++i)
    mode[i] = corrected[b.panels[i].loop].at(b.panels[i].mid);

  b.mode_velocities.push_back(std::move(mode));
  b.mode_loop_motion.push_back(std::move(corrected));
  b.hinge = hinge;
  return b;
}

/// Axis-aligned rectangle panelized as a fixed obstacle (no modes).
inline BodyBoundary build_rectangle(const Vec2& center, double width,
                                    double height, int panel_count) {
  if (!(width > 0.0 && height > 0.0))
    throw std::invalid_argument("build_rectangle: needs positive extents");
  if (panel_count < 8)
    throw std::invalid_argument("build_rectangle: requires panel_count >= 8");

  const double hw = 0.5 * width, hh = 0.5 * height;
  const Vec2 corners[4] = {center + Vec2(hw, -hh), center + Vec2(hw, hh),
                           center + Vec2(-hw, hh), center + Vec2(-hw, -hh)};
  const double per = 2.0 * (width + height);

  BodyBoundary b;
  b.loop_count = 1;
  std::vector<Vec2> pts;
  for (int side = 0; side < 4; ++side) {
    const Vec2& s0 = corners[side];
    const Vec2& s1 = corners[(side + 1) % 4];
    const double len = (s1 - s0).norm();
    const int n = std::max(1, static_cast<int>(std::round(panel_count * len / per)));
    for (int j = 0; j < n; ++j) pts.push_back(s0 + (s1 - s0) * (double(j) / n));
  }
  const std::size_t n = pts.size();
  for (std::size_t j = 0; j < n; ++j) {
    Panel p;
    p.p0 = pts[j];
    p.p1 = pts[(j + 1) % n];
    p.mid = 0.5 * (p.p0 + p.p1);
    const Vec2 d = p.p1 - p.p0;
    p.length = d.norm();
    p.normal = Vec2(-d.y(), d.x()) / p.length;
    p.loop = 0;
    b.panels.push_back(p);
  }
  return b;
}

}  // namespace swim
