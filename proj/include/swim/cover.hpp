// Universal-cover lifting of one-degree-of-freedom shape paths and the
// boundedness verdict it supports.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "swim/se2.hpp"

namespace swim {

/// Continuous lift of a sampled path on a 1D shape manifold to its universal
/// cover R. For circle-valued paths the lift unwraps winding; for real-valued
/// paths it is the path itself shifted to the chosen base point.
struct LiftedPath {
  std::vector<double> t;
  std::vector<double> lifted;
  double base_point{0.0};
  bool circle{false};
};

/// Unwrap samples of s(t) into the cover, starting from base_point in the
/// fiber over s(0). Consecutive circle increments must stay below pi.
inline LiftedPath lift(const std::vector<double>& t,
                       const std::vector<double>& s, double base_point,
                       bool circle) {
  if (t.size() != s.size() || t.size() < 2)
    throw std::invalid_argument("lift: need >= 2 matching samples");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1]))
      throw std::invalid_argument("lift: times must strictly increase");

  if (circle) {
    const double offset = wrap_angle(base_point - s.front());
    if (std::abs(offset) > 1e-9)
      throw std::invalid_argument(
          "lift: base point does not project onto s(0)");
  }

  LiftedPath lp;
  lp.t = t;
  lp.base_point = base_point;
  lp.circle = circle;
  lp.lifted.resize(s.size());
  lp.lifted[0] = base_point;
  for (std::size_t i = 1; i < s.size(); ++i) {
    double inc = s[i] - s[i - 1];
    if (circle) {
      inc = wrap_angle(inc);
      if (std::abs(inc) >= pi)
        throw std::runtime_error(
            "lift: undersampled path, increment of " + std::to_string(inc) +
            " at t=" + std::to_string(t[i]));
    }
    lp.lifted[i] = lp.lifted[i - 1] + inc;
  }
  return lp;
}

/// Total variation of the lift up to the horizon: sum of |delta s_hat|.
inline double lift_length(const LiftedPath& lp) {
  double len = 0.0;
  for (std::size_t i = 1; i < lp.lifted.size(); ++i)
    len += std::abs(lp.lifted[i] - lp.lifted[i - 1]);
  return len;
}

enum class LiftVerdict { FiniteLiftLength, GrowingLift };

/// Boundedness verdict and its witness data. The verdict is relative to the
/// sampled horizon: a lift whose image keeps expanding near the end of the
/// horizon proves nothing about locomotion, it only fails the criterion.
struct VerdictReport {
  LiftVerdict verdict{LiftVerdict::FiniteLiftLength};
  double lift_tv{0.0};          // total variation of the lift
  double image_lo{0.0};         // closure interval of the lifted image
  double image_hi{0.0};
  double tail_growth_rate{0.0}; // image expansion per unit time, tail window
  double witness_bound{0.0};    // K * integral of |sigma| over the image
  double base_point{0.0};
  double horizon{0.0};
};

/// Evaluate the criterion: the lift image must close up inside a compact
/// interval, detected by the image expansion rate over the trailing window.
/// For FiniteLiftLength the report carries the guaranteed trajectory radius
/// K * L(image), where L integrates the shape norm along the image interval
/// (traversed once); circle-valued coordinates have unit shape norm.
inline VerdictReport verdict(const LiftedPath& lp, double tail_window = 0.1,
                             double bound_K = 1.0, double tol = 1e-6) {
  if (lp.lifted.size() < 2)
    throw std::invalid_argument("verdict: empty lift");

  VerdictReport rep;
  rep.base_point = lp.base_point;
  rep.horizon = lp.t.back() - lp.t.front();
  rep.lift_tv = lift_length(lp);

  double lo = lp.lifted[0], hi = lp.lifted[0];
  const double t_tail = lp.t.back() - tail_window * rep.horizon;
  double lo_tail = lo, hi_tail = hi;  // image extent when the tail starts
  for (std::size_t i = 0; i < lp.lifted.size(); ++i) {
    lo = std::min(lo, lp.lifted[i]);
    hi = std::max(hi, lp.lifted[i]);
    if (lp.t[i] <= t_tail) {
      lo_tail = lo;
      hi_tail = hi;
    }
  }
  rep.image_lo = lo;
  rep.image_hi = hi;

  const double tail_span = std::max(lp.t.back() - t_tail, 1e-300);
  const double expansion = (hi - lo) - (hi_tail - lo_tail);
  rep.tail_growth_rate = expansion / tail_span;
  rep.verdict = rep.tail_growth_rate > tol ? LiftVerdict::GrowingLift
                                           : LiftVerdict::FiniteLiftLength;

  // integral of the shape norm along [lo, hi]. On the circle the norm of the
  // embedded point is 1; on R it is |sigma|.
  double image_integral;
  if (lp.circle) {
    image_integral = hi - lo;
  } else if (lo >= 0.0) {
    image_integral = 0.5 * (hi * hi - lo * lo);
  } else if (hi <= 0.0) {
    image_integral = 0.5 * (lo * lo - hi * hi);
  } else {
    image_integral = 0.5 * (lo * lo + hi * hi);
  }
  rep.witness_bound = bound_K * image_integral;
  return rep;
}

inline const char* to_string(LiftVerdict v) {
  return v == LiftVerdict::FiniteLiftLength ? "FiniteLiftLength"
                                            : "GrowingLift";
}

}  // namespace swim
