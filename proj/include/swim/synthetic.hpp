// Synthetic circle-shape field with a prescribed translation holonomy: each
// full winding of the shape coordinate advances the body by a fixed world
// displacement, while heading and sideways motion close up per loop.

#pragma once

#include <cmath>

#include "swim/engine.hpp"
#include "swim/se2.hpp"

namespace swim {

struct SyntheticSpec {
  double drift{0.05};      // mean advance per full winding along the heading
  double radial{0.02};     // in-loop wobble of the translation response
  double theta_gain{0.3};  // in-loop heading response (closes per loop)
};

/// Field on an S^1 shape coordinate. The heading depends on the shape value
/// only, so every winding produces the same displacement increment; the
/// per-loop holonomy is measured, not prescribed, once theta_gain or radial
/// are nonzero.
inline Field synthetic_holonomy_field(const SyntheticSpec& spec) {
  Field f;
  f.domain = ShapeDomain::scalar(-pi, pi, true);
  f.velocity = [spec](const Pose& q, ShapeVecRef s, ShapeVecRef sd) {
    if (s.size() != 1)
      throw std::invalid_argument("synthetic field: one shape dof");
    const double omega = spec.theta_gain * std::sin(s[0]) * sd[0];
    const Vec2 v(spec.drift / (2.0 * pi) + spec.radial * std::cos(s[0]),
                 spec.radial * std::sin(s[0]));
    return world_map(q, BodyTwist{omega, v * sd[0]});
  };
  f.bound_K = calibrate_bound(f, f.domain);
  return f;
}

}  // namespace swim
