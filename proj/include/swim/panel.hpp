// Constant-strength source panels with midpoint collocation for the 2D
// exterior Neumann problem. Potentials are determined up to an additive
// constant, which never enters: every downstream formula pairs potentials
// with zero-flux Neumann data or uses gradients only.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "swim/boundary.hpp"
#include "swim/se2.hpp"

namespace swim {

inline constexpr double flux_tolerance = 1e-8;
inline constexpr double condition_limit = 1e12;

/// Potential and velocity at X induced by a unit-strength source panel.
/// Velocity limits on the panel itself approach +/- 1/2 along the outward
/// normal; the midpoint of the panel itself must be special-cased by the
/// caller.
inline void panel_influence(const Panel& p, const Vec2& X, double& phi,
                            Vec2& vel) {
  const Vec2 t_hat = (p.p1 - p.p0) / p.length;
  const Vec2 z_hat = -p.normal;  // outward
  const double xi = (X - p.p0).dot(t_hat);
  const double zeta = (X - p.p0).dot(z_hat);
  const double l = p.length;

  const double r0sq = xi * xi + zeta * zeta;
  const double r1sq = (xi - l) * (xi - l) + zeta * zeta;

  auto F = [&](double v) {
    const double rsq = v * v + zeta * zeta;
    double term = (rsq > 0.0) ? v * std::log(rsq) : 0.0;
    if (zeta != 0.0) term += 2.0 * zeta * std::atan(v / zeta);
    return term - 2.0 * v;
  };
  phi = (F(xi) - F(xi - l)) / (4.0 * pi);

  const double u_xi =
      (r0sq > 0.0 && r1sq > 0.0) ? std::log(r0sq / r1sq) / (4.0 * pi) : 0.0;
  const double u_zeta =
      std::atan2(l * zeta, zeta * zeta + xi * (xi - l)) / (2.0 * pi);
  vel = u_xi * t_hat + u_zeta * z_hat;
}

/// Boundary solve output: source densities and the boundary values of the
/// potential.
struct PanelSolution {
  Eigen::VectorXd strengths;
  Eigen::VectorXd potential_at_panels;
  double bc_residual{0.0};
};

/// Influence assembly and factorization for one boundary; reusable across
/// right-hand sides of the same geometry.
class NeumannSolver {
 public:
  explicit NeumannSolver(const BodyBoundary& b) : boundary_(&b) {
    const Eigen::Index n = static_cast<Eigen::Index>(b.panels.size());
    if (n == 0) throw std::invalid_argument("NeumannSolver: empty boundary");
    A_.resize(n, n);
    Phi_.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Panel& target = b.panels[i];
      const Vec2 n_out = -target.normal;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j) {
          A_(i, i) = 0.5;  // fluid-side limit of the self-induced normal flow
          const double l = target.length;
          Phi_(i, i) = l * (std::log(0.5 * l) - 1.0) / (2.0 * pi);
          continue;
        }
        double phi;
        Vec2 vel;
        panel_influence(b.panels[j], target.mid, phi, vel);
        A_(i, j) = n_out.dot(vel);
        Phi_(i, j) = phi;
      }
    }
    lu_.compute(A_);
    const Eigen::VectorXd d = lu_.matrixLU().diagonal().cwiseAbs();
    const double dmin = d.minCoeff();
    condition_proxy_ =
        (dmin > 0.0) ? d.maxCoeff() / dmin : std::numeric_limits<double>::infinity();
    if (condition_proxy_ > condition_limit)
      throw std::runtime_error("NeumannSolver: influence matrix is "
                               "ill-conditioned");
  }

  /// Solve with Neumann data given as w . n with the inward normal (the
  /// boundary's stored convention).
  [[nodiscard]] PanelSolution solve(const Eigen::VectorXd& data_inward) const {
    const BodyBoundary& b = *boundary_;
    if (data_inward.size() != static_cast<Eigen::Index>(b.panels.size()))
      throw std::invalid_argument("NeumannSolver: data size mismatch");
    if (flux_residual(b, data_inward) > flux_tolerance)
      throw std::runtime_error(
          "NeumannSolver: incompatible flux, net flow through a loop");

    PanelSolution sol;
    const Eigen::VectorXd g = -data_inward;  // switch to the outward normal
    sol.strengths = lu_.solve(g);
    sol.potential_at_panels = Phi_ * sol.strengths;
    sol.bc_residual = (A_ * sol.strengths - g).norm() / (g.norm() + 1e-30);
    if (!(sol.bc_residual < 1e-8))
      throw std::runtime_error("NeumannSolver: boundary-condition residual "
                               "exceeds solver tolerance");
    return sol;
  }

  [[nodiscard]] double condition_proxy() const { return condition_proxy_; }
  [[nodiscard]] const BodyBoundary& boundary() const { return *boundary_; }

 private:
  const BodyBoundary* boundary_;
  Eigen::MatrixXd A_, Phi_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double condition_proxy_{0.0};
};

/// One-shot convenience wrapper.
inline PanelSolution solve_neumann(const BodyBoundary& b,
                                   const Eigen::VectorXd& data_inward) {
  return NeumannSolver(b).solve(data_inward);
}

/// Flow velocity at a field point away from the boundary.
inline Vec2 induced_velocity(const BodyBoundary& b,
                             const Eigen::VectorXd& strengths, const Vec2& X) {
  Vec2 u(0.0, 0.0);
  for (std::size_t j = 0; j < b.panels.size(); ++j) {
    double phi;
    Vec2 vel;
    panel_influence(b.panels[j], X, phi, vel);
    u += strengths[j] * vel;
  }
  return u;
}

/// Tangential flow at each panel midpoint on the fluid side; the self panel
/// has no principal-value tangential contribution.
inline Eigen::VectorXd boundary_tangential_velocity(
    const BodyBoundary& b, const Eigen::VectorXd& strengths) {
  const Eigen::Index n = static_cast<Eigen::Index>(b.panels.size());
  Eigen::VectorXd ut(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Panel& target = b.panels[i];
    const Vec2 t_hat = (target.p1 - target.p0) / target.length;
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      double phi;
      Vec2 vel;
      panel_influence(b.panels[j], target.mid, phi, vel);
      acc += strengths[j] * t_hat.dot(vel);
    }
    ut[i] = acc;
  }
  return ut;
}

}  // namespace swim
