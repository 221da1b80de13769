// Fixed-step integration of the shape-driven pose dynamics
// qdot = F(q, s) sdot, plus the field-contract diagnostics.

#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "swim/se2.hpp"
#include "swim/shape_path.hpp"

namespace swim {

/// Anything that maps (pose, shape, shape rate) to a world velocity
/// (theta_dot, x_dot, y_dot).
template <class F>
concept ShapeField = requires(const F& f, const Pose& q, const ShapeVec& s) {
  { f(q, s, s) } -> std::convertible_to<Vec3>;
};

/// Sampling box for contract probes: a shape box plus the pose box the
/// probes may visit (kept clear of any obstacle).
struct ShapeDomain {
  ShapeVec lo, hi;
  std::vector<bool> circle;
  Vec3 pose_lo{-pi, -2.0, -2.0};
  Vec3 pose_hi{pi, 2.0, 2.0};

  [[nodiscard]] Eigen::Index dof() const { return lo.size(); }

  static ShapeDomain scalar(double lo, double hi, bool circle_flag = false) {
    ShapeDomain d;
    d.lo = ShapeVec::Constant(1, lo);
    d.hi = ShapeVec::Constant(1, hi);
    d.circle = {circle_flag};
    return d;
  }
};

/// Type-erased swimmer field: the velocity map plus its claimed growth
/// constant and the shape box it was calibrated on.
struct Field {
  std::function<Vec3(const Pose&, const ShapeVec&, const ShapeVec&)> velocity;
  double bound_K{0.0};
  ShapeDomain domain;

  Vec3 operator()(const Pose& q, const ShapeVec& s, const ShapeVec& sd) const {
    return velocity(q, s, sd);
  }
};

struct TrajectorySample {
  double t{0.0};
  ShapeVec s;
  Pose pose;
  Vec3 qdot{0.0, 0.0, 0.0};  // world velocity at the sample
};

/// Integration output: strictly increasing times starting at t = 0 with the
/// supplied initial pose.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  double step{0.0};

  [[nodiscard]] const Pose& initial() const { return samples.front().pose; }
  [[nodiscard]] const Pose& final() const { return samples.back().pose; }

  /// Cubic Hermite interpolation of the pose chart between samples.
  [[nodiscard]] Pose eval(double t) const {
    if (t <= samples.front().t) return samples.front().pose;
    if (t >= samples.back().t) return samples.back().pose;
    std::size_t lo = 0, hi = samples.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (samples[mid].t > t ? hi : lo) = mid;
    }
    const auto& s0 = samples[lo];
    const auto& s1 = samples[lo + 1];
    const double h = s1.t - s0.t;
    const double u = (t - s0.t) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    const double h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u);
    const double h11 = u * u * (u - 1);
    const Vec3 v = h00 * s0.pose.as_vector() + h10 * h * s0.qdot +
                   h01 * s1.pose.as_vector() + h11 * h * s1.qdot;
    return Pose::from_vector(v);
  }

  /// Diagonal of the chart bounding box; an upper bound for the diameter.
  [[nodiscard]] double chart_diameter_bound() const {
    Vec3 lo = samples.front().pose.as_vector(), hi = lo;
    for (const auto& s : samples) {
      lo = lo.cwiseMin(s.pose.as_vector());
      hi = hi.cwiseMax(s.pose.as_vector());
    }
    return (hi - lo).norm();
  }
};

namespace detail {

template <ShapeField F>
Vec3 field_rhs(const F& field, const ShapePath& path, double t, const Vec3& y) {
  auto [s, sd] = path.sample(t);
  const Vec3 v = field(Pose::from_vector(y), s, sd);
  if (!v.allFinite()) {
    std::ostringstream msg;
    msg << "integrate: non-finite field value at t=" << t
        << " s=" << s.transpose() << " q=(" << y.transpose() << ")";
    throw std::runtime_error(msg.str());
  }
  return v;
}

}  // namespace detail

/// Classical 4th-order fixed-step integration over the path horizon.
/// A short final step closes any remainder so the last sample lands on the
/// horizon exactly.
template <ShapeField F>
Trajectory integrate(const F& field, const ShapePath& path, const Pose& q0,
                     double h) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate: step must be > 0");
  const double T = path.horizon;

  Trajectory traj;
  traj.step = h;
  Vec3 y = q0.as_vector();
  double t = 0.0;
  auto push = [&](double tk, const Vec3& yk) {
    TrajectorySample smp;
    smp.t = tk;
    smp.s = path.sample(tk).first;
    smp.pose = Pose::from_vector(yk);
    smp.qdot = detail::field_rhs(field, path, tk, yk);
    traj.samples.push_back(std::move(smp));
  };
  push(0.0, y);

  const auto rhs = [&](double tk, const Vec3& yk) {
    return detail::field_rhs(field, path, tk, yk);
  };
  const auto advance = [&](double hk) {
    const Vec3 k1 = rhs(t, y);
    const Vec3 k2 = rhs(t + 0.5 * hk, y + 0.5 * hk * k1);
    const Vec3 k3 = rhs(t + 0.5 * hk, y + 0.5 * hk * k2);
    const Vec3 k4 = rhs(t + hk, y + hk * k3);
    y += (hk / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };
  const long n = static_cast<long>(std::floor(T / h + 1e-9));
  for (long k = 0; k < n; ++k) {
    advance(h);
    t = (k + 1) * h;
    push(t, y);
  }
  if (T - t > 1e-12 * std::max(1.0, T)) {
    advance(T - t);  // short closing step onto the horizon
    t = T;
    push(T, y);
  }
  return traj;
}

/// Superposition and growth-bound probe report for a field.
struct ContractReport {
  double max_linearity_residual{0.0};
  double max_bound_ratio{0.0};
  int probes{0};

  [[nodiscard]] bool linear_ok() const {
    return max_linearity_residual < 1e-8;
  }
};

/// Probe a field with random superpositions: residual of
/// F(a u + b w) - a F(u) - b F(w), normalized by the term magnitudes, and the
/// empirical ratio |F sdot| / (|s| |sdot|).
template <ShapeField F>
ContractReport check_field_contract(const F& field, const ShapeDomain& dom,
                                    int probes, unsigned seed = 0x5eed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);

  ContractReport rep;
  rep.probes = probes;
  const Eigen::Index m = dom.dof();
  for (int i = 0; i < probes; ++i) {
    Vec3 qv;
    for (int j = 0; j < 3; ++j)
      qv[j] = dom.pose_lo[j] + (dom.pose_hi[j] - dom.pose_lo[j]) * unit(rng);
    const Pose q = Pose::from_vector(qv);
    ShapeVec s(m), u(m), w(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      s[j] = dom.lo[j] + (dom.hi[j] - dom.lo[j]) * unit(rng);
      u[j] = sym(rng);
      w[j] = sym(rng);
    }
    const double a = 2.0 * sym(rng), bcoef = 2.0 * sym(rng);

    const Vec3 fu = field(q, s, u);
    const Vec3 fw = field(q, s, w);
    const Vec3 fc = field(q, s, ShapeVec(a * u + bcoef * w));
    const double scale = std::abs(a) * fu.norm() + std::abs(bcoef) * fw.norm() + 1.0;
    rep.max_linearity_residual =
        std::max(rep.max_linearity_residual,
                 (fc - a * fu - bcoef * fw).norm() / scale);

    const double denom = shape_norm(s, dom.circle) * u.norm();
    if (denom > 1e-12)
      rep.max_bound_ratio = std::max(rep.max_bound_ratio, fu.norm() / denom);
  }
  return rep;
}

/// Empirical growth constant over a deterministic probe sweep, padded so the
/// claimed bound also covers diameter-style estimates.
template <ShapeField F>
double calibrate_bound(const F& field, const ShapeDomain& dom, int probes = 256,
                       double safety = 3.0) {
  const ContractReport rep = check_field_contract(field, dom, probes);
  return safety * rep.max_bound_ratio;
}

}  // namespace swim
