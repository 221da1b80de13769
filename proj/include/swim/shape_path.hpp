// Time-parameterized shape functions t -> (s(t), sdot(t)) and the
// reparameterization s -> s(beta(t)).

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "swim/numerics.hpp"

namespace swim {

using ShapeVec = Eigen::VectorXd;
using ShapeVecRef = const ShapeVec&;

/// Norm of a shape value. Coordinates flagged as circle-valued live on the
/// unit circle, so they contribute 1 to the squared norm regardless of the
/// chart representative.
inline double shape_norm(const ShapeVec& s, const std::vector<bool>& circle) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const bool on_circle =
        i < static_cast<Eigen::Index>(circle.size()) && circle[i];
    acc += on_circle ? 1.0 : s[i] * s[i];
  }
  return std::sqrt(acc);
}

/// Sampled/time-parameterized shape function with rate, over [0, horizon].
/// accel is optional; when absent, consumers fall back to differencing sdot.
struct ShapePath {
  std::function<std::pair<ShapeVec, ShapeVec>(double)> sample;
  std::function<ShapeVec(double)> accel;  // may be empty
  double horizon{0.0};
  std::vector<bool> circle;  // per-coordinate circle flags

  [[nodiscard]] Eigen::Index dof() const { return sample(0.0).first.size(); }

  [[nodiscard]] ShapeVec accel_at(double t) const {
    if (accel) return accel(t);
    const double d = 1e-5;
    const double lo = std::max(0.0, t - d), hi = t + d;
    return (sample(hi).second - sample(lo).second) / (hi - lo);
  }
};

/// s(t) = offset + amplitude * cos(omega t + phase).
inline ShapePath cosine_path(double amplitude, double omega, double phase,
                             double offset, double horizon) {
  ShapePath p;
  p.horizon = horizon;
  p.circle = {false};
  p.sample = [=](double t) {
    ShapeVec s(1), sd(1);
    s[0] = offset + amplitude * std::cos(omega * t + phase);
    sd[0] = -amplitude * omega * std::sin(omega * t + phase);
    return std::make_pair(s, sd);
  };
  p.accel = [=](double t) {
    ShapeVec a(1);
    a[0] = -amplitude * omega * omega * std::cos(omega * t + phase);
    return a;
  };
  return p;
}

/// Phase-warped cosine: s(t) = offset + A cos(g(t)), g(t) = omega t + warp sin(omega t).
/// Traces the same shape interval as the plain cosine under a different rate
/// profile; |warp| < 1 keeps g monotone.
inline ShapePath warped_cosine_path(double amplitude, double omega,
                                    double warp, double offset,
                                    double horizon) {
  ShapePath p;
  p.horizon = horizon;
  p.circle = {false};
  p.sample = [=](double t) {
    const double g = omega * t + warp * std::sin(omega * t);
    const double gd = omega * (1.0 + warp * std::cos(omega * t));
    ShapeVec s(1), sd(1);
    s[0] = offset + amplitude * std::cos(g);
    sd[0] = -amplitude * std::sin(g) * gd;
    return std::make_pair(s, sd);
  };
  p.accel = [=](double t) {
    const double g = omega * t + warp * std::sin(omega * t);
    const double gd = omega * (1.0 + warp * std::cos(omega * t));
    const double gdd = -omega * omega * warp * std::sin(omega * t);
    ShapeVec a(1);
    a[0] = -amplitude * (std::cos(g) * gd * gd + std::sin(g) * gdd);
    return a;
  };
  return p;
}

/// s(t) = offset + amplitude * exp(-decay t) * sin(omega t).
inline ShapePath damped_path(double amplitude, double omega, double decay,
                             double offset, double horizon) {
  ShapePath p;
  p.horizon = horizon;
  p.circle = {false};
  p.sample = [=](double t) {
    const double e = amplitude * std::exp(-decay * t);
    ShapeVec s(1), sd(1);
    s[0] = offset + e * std::sin(omega * t);
    sd[0] = e * (omega * std::cos(omega * t) - decay * std::sin(omega * t));
    return std::make_pair(s, sd);
  };
  p.accel = [=](double t) {
    const double e = amplitude * std::exp(-decay * t);
    ShapeVec a(1);
    a[0] = e * ((decay * decay - omega * omega) * std::sin(omega * t) -
                2.0 * decay * omega * std::cos(omega * t));
    return a;
  };
  return p;
}

/// Uniform winding on the circle: s(t) = base + rate * t, circle-flagged.
inline ShapePath winding_path(double rate, double base, double horizon) {
  ShapePath p;
  p.horizon = horizon;
  p.circle = {true};
  p.sample = [=](double t) {
    ShapeVec s(1), sd(1);
    s[0] = base + rate * t;
    sd[0] = rate;
    return std::make_pair(s, sd);
  };
  p.accel = [](double) { return ShapeVec::Zero(1); };
  return p;
}

/// Path through tabulated (t, s) samples via a natural cubic spline.
inline ShapePath spline_path(const std::vector<double>& t,
                             const std::vector<double>& s, bool circle_flag) {
  CubicSpline spline(t, s);
  ShapePath p;
  p.horizon = t.back() - t.front();
  p.circle = {circle_flag};
  const double t0 = t.front();
  p.sample = [spline, t0](double u) {
    ShapeVec s1(1), sd(1);
    s1[0] = spline(t0 + u);
    sd[0] = spline.derivative(t0 + u);
    return std::make_pair(s1, sd);
  };
  return p;
}

/// Chain a C^1 time change beta into a path:
/// t -> (s(beta(t)), sdot(beta(t)) * beta'(t)). beta need not be monotone.
inline ShapePath reparameterize(const ShapePath& path,
                                std::function<double(double)> beta,
                                std::function<double(double)> beta_prime,
                                double new_horizon) {
  ShapePath p;
  p.horizon = new_horizon;
  p.circle = path.circle;
  p.sample = [path, beta, beta_prime](double t) {
    const double b = beta(t);
    if (!std::isfinite(b) || b < 0.0)
      throw std::domain_error("reparameterize: beta must map into [0, inf)");
    auto [s, sd] = path.sample(b);
    return std::make_pair(s, ShapeVec(sd * beta_prime(t)));
  };
  return p;
}

/// Quadrature of the growth-bound integrand |s| |sdot| over [0, horizon].
inline double path_effort(const ShapePath& path, int n = 4000) {
  return simpson(
      [&](double t) {
        auto [s, sd] = path.sample(t);
        return shape_norm(s, path.circle) * sd.norm();
      },
      0.0, path.horizon, n);
}

/// Spot-check that finite differences of s reproduce sdot to O(h).
inline double path_rate_residual(const ShapePath& path, int probes = 32) {
  const double h = 1e-6 * std::max(1.0, path.horizon);
  double worst = 0.0;
  for (int i = 0; i < probes; ++i) {
    const double t =
        path.horizon * (i + 0.5) / probes;  // interior points only
    const ShapeVec fd =
        (path.sample(t + h).first - path.sample(t - h).first) / (2.0 * h);
    worst = std::max(worst, (fd - path.sample(t).second).norm());
  }
  return worst;
}

}  // namespace swim
