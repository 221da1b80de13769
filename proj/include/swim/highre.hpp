// High-Reynolds (potential flow) model: Kirchhoff elementary potentials from
// the panel solver, added-mass and coupling matrices, the first-order
// free-space field, and the second-order dynamics beside a fixed obstacle.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "swim/boundary.hpp"
#include "swim/engine.hpp"
#include "swim/matrices.hpp"
#include "swim/numerics.hpp"
#include "swim/panel.hpp"
#include "swim/se2.hpp"

namespace swim {

struct HighReParams {
  double rho_f{1.0};  // fluid density
  double rho_0{1.0};  // body density
};

/// Elementary potentials for the three rigid modes (rotation about the frame
/// origin, unit translations) and each shape mode, all on one geometry.
struct KirchhoffBasis {
  std::vector<PanelSolution> rigid;       // 3 solutions
  std::vector<PanelSolution> modes;       // one per shape dof
  std::vector<Eigen::VectorXd> rigid_data;  // inward-normal Neumann data
  std::vector<Eigen::VectorXd> mode_data;
  std::vector<double> panel_lengths;
};

/// Solve the exterior Neumann problem for every rigid and shape mode of a
/// boundary. Rigid rotation is taken about rotation_center; fixed loops
/// (mode velocity zero) contribute zero Neumann data automatically.
inline KirchhoffBasis solve_kirchhoff(const NeumannSolver& solver,
                                      const Vec2& rotation_center) {
  const BodyBoundary& b = solver.boundary();
  const Eigen::Index n = static_cast<Eigen::Index>(b.panels.size());

  KirchhoffBasis basis;
  basis.panel_lengths.reserve(n);
  for (const Panel& p : b.panels) basis.panel_lengths.push_back(p.length);

  for (int mode = 0; mode < 3; ++mode) {
    Eigen::VectorXd data(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Panel& p = b.panels[i];
      Vec2 u;
      if (mode == 0)
        u = perp(p.mid - rotation_center);
      else
        u = (mode == 1) ? Vec2(1.0, 0.0) : Vec2(0.0, 1.0);
      data[i] = u.dot(p.normal);
    }
    basis.rigid.push_back(solver.solve(data));
    basis.rigid_data.push_back(std::move(data));
  }
  for (int k = 0; k < b.mode_count(); ++k) {
    Eigen::VectorXd data = mode_boundary_data(b, k);
    basis.modes.push_back(solver.solve(data));
    basis.mode_data.push_back(std::move(data));
  }
  return basis;
}

namespace detail {

/// Boundary pairing rho * sum phi_a . data_b . len. With interior-directed
/// normals this equals the fluid kinetic-energy inner product of the two
/// elementary flows.
inline double energy_pairing(const KirchhoffBasis& basis,
                             const Eigen::VectorXd& phi_a,
                             const Eigen::VectorXd& data_b, double rho) {
  double acc = 0.0;
  for (std::size_t p = 0; p < basis.panel_lengths.size(); ++p)
    acc += phi_a[p] * data_b[p] * basis.panel_lengths[p];
  return rho * acc;
}

}  // namespace detail

/// Fluid added-mass matrix over the rigid modes, symmetrized. The
/// pre-symmetrization residual (a discretization error indicator) is
/// reported through asym when given.
inline Mat3 added_mass(const KirchhoffBasis& basis, double rho_f,
                       double* asym = nullptr) {
  Mat3 M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      M(i, j) = detail::energy_pairing(
          basis, basis.rigid[i].potential_at_panels, basis.rigid_data[j],
          rho_f);
  if (asym) *asym = (M - M.transpose()).norm() / std::max(M.norm(), 1e-30);
  return 0.5 * (M + Mat3(M.transpose()));
}

/// Shape-to-rigid coupling, averaged over the two equivalent pairings.
inline Eigen::Matrix3Xd coupling_highre(const KirchhoffBasis& basis,
                                        double rho_f) {
  const int m = static_cast<int>(basis.modes.size());
  Eigen::Matrix3Xd N(3, m);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < m; ++k) {
      const double a = detail::energy_pairing(
          basis, basis.rigid[j].potential_at_panels, basis.mode_data[k],
          rho_f);
      const double b = detail::energy_pairing(
          basis, basis.modes[k].potential_at_panels, basis.rigid_data[j],
          rho_f);
      N(j, k) = 0.5 * (a + b);
    }
  return N;
}

/// Shape-shape block of the fluid kinetic energy.
inline Eigen::MatrixXd shape_added_mass(const KirchhoffBasis& basis,
                                        double rho_f) {
  const int m = static_cast<int>(basis.modes.size());
  Eigen::MatrixXd M(m, m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      M(k, l) = detail::energy_pairing(
          basis, basis.modes[k].potential_at_panels, basis.mode_data[l],
          rho_f);
  return 0.5 * (M + Eigen::MatrixXd(M.transpose()));
}

/// Body mass and moment of inertia about the frame origin, by the exact
/// polygon quadrature of the panelized region at uniform density.
struct RigidInertia {
  double mass{0.0};
  double inertia{0.0};
};

inline RigidInertia body_inertia(const BodyBoundary& b, double rho_0) {
  RigidInertia ri;
  for (int l = 0; l < b.loop_count; ++l) {
    const LoopMoments m = loop_moments(b, l);
    ri.mass += rho_0 * m.area;
    ri.inertia += rho_0 * m.second_moment;
  }
  return ri;
}

/// Deformation kinetic-energy block of the body at uniform density,
/// for loopwise-rigid modes.
inline Eigen::MatrixXd body_mode_energy(const BodyBoundary& b, double rho_0) {
  const int m = b.mode_count();
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(m, m);
  if (b.mode_loop_motion.empty()) return E;
  for (int loop = 0; loop < b.loop_count; ++loop) {
    const LoopMoments mom = loop_moments(b, loop);
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l) {
        const LoopMotion& a = b.mode_loop_motion[k][loop];
        const LoopMotion& c = b.mode_loop_motion[l][loop];
        double e = mom.area * a.v.dot(c.v);
        e += (a.omega * c.v + c.omega * a.v).dot(perp(mom.centroid)) * mom.area;
        e += a.omega * c.omega * mom.second_moment;
        E(k, l) += rho_0 * e;
      }
  }
  return E;
}

/// Grand inertia matrix: rigid-body part plus fluid added mass.
inline Mat3 full_mass(const Mat3& added, const RigidInertia& rigid) {
  Mat3 M = added;
  M(0, 0) += rigid.inertia;
  M(1, 1) += rigid.mass;
  M(2, 2) += rigid.mass;
  return M;
}

/// All kinetic-energy blocks of the coupled body-fluid system in the world
/// chart (theta, x, y). asym records the added-mass pairing residual.
struct LagrangianBlocks {
  Mat3 M = Mat3::Zero();
  Eigen::Matrix3Xd N;
  Eigen::MatrixXd mss;
  double asym{0.0};
};

/// Assemble the energy blocks for a swimmer boundary (given in its body
/// frame) placed at pose q, optionally beside a fixed obstacle. The solve
/// runs in the world frame; rotation data is taken about the frame origin
/// q.r, so the blocks belong to the chart velocities (theta_dot, x_dot,
/// y_dot).
inline LagrangianBlocks assemble_blocks(const BodyBoundary& body_frame,
                                        const Pose& q,
                                        const BodyBoundary* obstacle,
                                        const HighReParams& params) {
  BodyBoundary world = transform(body_frame, q);
  if (obstacle) world = merge(world, *obstacle);

  const NeumannSolver solver(world);
  const KirchhoffBasis basis = solve_kirchhoff(solver, q.r);

  LagrangianBlocks blocks;
  const Mat3 Mf = added_mass(basis, params.rho_f, &blocks.asym);
  blocks.M = full_mass(Mf, body_inertia(body_frame, params.rho_0));
  blocks.N = coupling_highre(basis, params.rho_f);
  blocks.mss = shape_added_mass(basis, params.rho_f) +
               body_mode_energy(body_frame, params.rho_0);
  return blocks;
}

// ---------------------------------------------------------------------------
// Free-space first-order field
// ---------------------------------------------------------------------------

namespace detail {

inline void require_opening(ShapeVecRef s, const ShapeDomain& dom) {
  if (s.size() != 1)
    throw std::invalid_argument("scallop field: expected one shape dof");
  if (s[0] < dom.lo[0] - 1e-6 || s[0] > dom.hi[0] + 1e-6)
    throw std::domain_error("scallop field: opening outside allowed range");
}

}  // namespace detail

/// Free-space scallop field assembled per evaluation: the impulse balance
/// reduces the dynamics to qdot = world(-Mr(s)^{-1} N(s) sdot).
inline Field highre_free_field(const ScallopGeometry& geom,
                               const HighReParams& params,
                               const ShapeDomain& domain) {
  Field f;
  f.domain = domain;
  f.velocity = [geom, params, domain](const Pose& q, ShapeVecRef s,
                                      ShapeVecRef sd) {
    detail::require_opening(s, domain);
    const BodyBoundary body = build_scallop(geom.at_opening(s[0]));
    const LagrangianBlocks bl =
        assemble_blocks(body, Pose::identity(), nullptr, params);
    GrandMatrices gm;
    gm.Mr = bl.M;
    gm.N = bl.N;
    gm.require_spd("highre_free_field");
    return world_map(q, gm.respond(sd));
  };
  f.bound_K = calibrate_bound(f, domain, 48);
  return f;
}

/// Free-space field with the response -Mr^{-1} N precomputed on a uniform
/// opening grid and interpolated by natural cubic splines. Identical
/// structure to the direct field (still a fixed function of the opening), at
/// a fraction of the evaluation cost.
inline Field highre_free_field_tabulated(const ScallopGeometry& geom,
                                         const HighReParams& params,
                                         const ShapeDomain& domain,
                                         int nodes = 81) {
  if (nodes < 9)
    throw std::invalid_argument("highre_free_field_tabulated: nodes >= 9");

  std::vector<double> grid(nodes);
  std::vector<std::vector<double>> g(3, std::vector<double>(nodes));
  for (int i = 0; i < nodes; ++i) {
    const double s =
        domain.lo[0] + (domain.hi[0] - domain.lo[0]) * i / (nodes - 1);
    grid[i] = s;
    const BodyBoundary body = build_scallop(geom.at_opening(s));
    const LagrangianBlocks bl =
        assemble_blocks(body, Pose::identity(), nullptr, params);
    GrandMatrices gm;
    gm.Mr = bl.M;
    gm.N = bl.N;
    gm.require_spd("highre_free_field_tabulated");
    const BodyTwist tw = gm.respond(ShapeVec::Constant(1, 1.0));
    g[0][i] = tw.omega;
    g[1][i] = tw.v.x();
    g[2][i] = tw.v.y();
  }
  const CubicSpline s0(grid, g[0]), s1(grid, g[1]), s2(grid, g[2]);

  Field f;
  f.domain = domain;
  f.velocity = [s0, s1, s2, domain](const Pose& q, ShapeVecRef s,
                                    ShapeVecRef sd) {
    detail::require_opening(s, domain);
    const BodyTwist tw{s0(s[0]) * sd[0], {s1(s[0]) * sd[0], s2(s[0]) * sd[0]}};
    return world_map(q, tw);
  };
  f.bound_K = calibrate_bound(f, domain, 128);
  return f;
}

// ---------------------------------------------------------------------------
// Second-order dynamics beside a fixed obstacle
// ---------------------------------------------------------------------------

/// Second-order state: pose plus body-frame twist.
struct RichState {
  Pose q;
  BodyTwist qdot;

  [[nodiscard]] bool finite() const {
    return std::isfinite(q.theta) && q.r.allFinite() && qdot.finite();
  }
};

/// Raised when the swimmer reaches the proximity limit of the obstacle.
struct CollisionStop : std::runtime_error {
  double time;
  double gap;
  CollisionStop(double t, double g)
      : std::runtime_error("collision stop: swimmer reached the obstacle"),
        time(t),
        gap(g) {}
};

/// Scallop-beside-obstacle model with the finite-difference steps used for
/// the configuration derivatives of the energy blocks.
struct ObstacleDynamics {
  ScallopGeometry geom;
  HighReParams params;
  std::optional<BodyBoundary> obstacle;
  double eps_gap{0.0};     // collision threshold; default 0.05 b
  double fd_shape{1e-4};   // rad
  double fd_linear{0.0};   // default 1e-4 a
  double fd_angle{1e-4};   // rad

  [[nodiscard]] double gap(const Pose& q, double opening) const {
    if (!obstacle) return std::numeric_limits<double>::infinity();
    const BodyBoundary body =
        transform(build_scallop(geom.at_opening(opening)), q);
    return boundary_gap(body, *obstacle);
  }

  [[nodiscard]] LagrangianBlocks blocks(double opening, const Pose& q) const {
    const BodyBoundary body = build_scallop(geom.at_opening(opening));
    return assemble_blocks(body, q, obstacle ? &*obstacle : nullptr, params);
  }
};

inline ObstacleDynamics make_obstacle_dynamics(
    const ScallopGeometry& geom, const HighReParams& params,
    std::optional<BodyBoundary> obstacle) {
  ObstacleDynamics dyn;
  dyn.geom = geom;
  dyn.params = params;
  dyn.obstacle = std::move(obstacle);
  dyn.eps_gap = 0.05 * geom.b;
  dyn.fd_linear = 1e-4 * geom.a;
  return dyn;
}

/// Time derivative of the second-order state: Lagrangian dynamics with
/// configuration-dependent energy blocks,
///   M qddot = dL/dq - (dM/dt) qdot - d(N sdot)/dt,
/// in the world chart; all configuration derivatives by central finite
/// differences of the panel assemblies.
inline std::pair<Vec3, Vec3> obstacle_dynamics_step(
    const ObstacleDynamics& dyn, double t, const RichState& state,
    ShapeVecRef s, ShapeVecRef sd, ShapeVecRef sdd) {
  if (s.size() != 1)
    throw std::invalid_argument("obstacle_dynamics_step: one shape dof");
  const double opening = s[0];
  if (dyn.obstacle) {
    const double g = dyn.gap(state.q, opening);
    if (g <= dyn.eps_gap) throw CollisionStop(t, g);
  }

  const Vec3 qdot = world_map(state.q, state.qdot);
  const LagrangianBlocks c = dyn.blocks(opening, state.q);

  // Central differences in (s, theta, x, y).
  const double steps[4] = {dyn.fd_shape, dyn.fd_angle, dyn.fd_linear,
                           dyn.fd_linear};
  Mat3 dM[4];
  Eigen::Matrix3Xd dN[4];
  Eigen::MatrixXd dmss[4];
  for (int k = 0; k < 4; ++k) {
    double op_p = opening, op_m = opening;
    Pose qp = state.q, qm = state.q;
    if (k == 0) {
      op_p += steps[0];
      op_m -= steps[0];
    } else if (k == 1) {
      qp.theta += steps[1];
      qm.theta -= steps[1];
    } else {
      qp.r[k - 2] += steps[k];
      qm.r[k - 2] -= steps[k];
    }
    const LagrangianBlocks bp = dyn.blocks(op_p, qp);
    const LagrangianBlocks bm = dyn.blocks(op_m, qm);
    const double inv = 1.0 / (2.0 * steps[k]);
    dM[k] = (bp.M - bm.M) * inv;
    dN[k] = (bp.N - bm.N) * inv;
    dmss[k] = (bp.mss - bm.mss) * inv;
  }

  // dM/dt and d(N sdot)/dt along the motion.
  Mat3 Mdot = dM[0] * sd[0];
  Eigen::Matrix3Xd Ndot = dN[0] * sd[0];
  for (int k = 0; k < 3; ++k) {
    Mdot += dM[k + 1] * qdot[k];
    Ndot += dN[k + 1] * qdot[k];
  }

  // Configuration gradient of the kinetic energy.
  Vec3 dLdq;
  for (int k = 0; k < 3; ++k) {
    dLdq[k] = 0.5 * qdot.dot(dM[k + 1] * qdot) + qdot.dot(dN[k + 1] * sd) +
              0.5 * sd.dot(dmss[k + 1] * sd);
  }

  const Vec3 rhs = dLdq - Mdot * qdot - Ndot * sd - c.N * sdd;
  const Vec3 qddot = c.M.ldlt().solve(rhs);
  if (!qddot.allFinite())
    throw std::runtime_error("obstacle_dynamics_step: non-finite acceleration");
  return {qdot, qddot};
}

/// Impulse-free start: chart velocity solving M qdot + N sdot = 0.
inline RichState rest_start(const ObstacleDynamics& dyn, const Pose& q0,
                            ShapeVecRef s0, ShapeVecRef sd0) {
  const LagrangianBlocks c = dyn.blocks(s0[0], q0);
  const Vec3 qdot = c.M.ldlt().solve(Vec3(-(c.N * sd0)));
  const Mat2 Rt = rotation(-q0.theta);
  return {q0, {qdot[0], Rt * Vec2(qdot[1], qdot[2])}};
}

struct SecondOrderRun {
  Trajectory trajectory;
  bool collided{false};
  double collision_time{0.0};
};

/// RK4 integration of the second-order dynamics over the path horizon.
/// Stops with the collision flag set when the proximity limit is reached.
inline SecondOrderRun integrate_second_order(const ObstacleDynamics& dyn,
                                             const ShapePath& path,
                                             const RichState& start,
                                             double h) {
  if (!(h > 0.0))
    throw std::invalid_argument("integrate_second_order: step must be > 0");

  SecondOrderRun run;
  run.trajectory.step = h;

  Eigen::VectorXd y(6);
  y.head<3>() = start.q.as_vector();
  y.tail<3>() = world_map(start.q, start.qdot);

  auto rhs = [&](double t, const Eigen::VectorXd& yk) {
    RichState st;
    st.q = Pose::from_vector(yk.head<3>());
    const Mat2 Rt = rotation(-st.q.theta);
    st.qdot = {yk[3], Rt * Vec2(yk[4], yk[5])};
    auto [s, sd] = path.sample(t);
    const ShapeVec sdd = path.accel_at(t);
    auto [qd, qdd] = obstacle_dynamics_step(dyn, t, st, s, sd, sdd);
    Eigen::VectorXd dy(6);
    dy.head<3>() = qd;
    dy.tail<3>() = qdd;
    return dy;
  };

  auto push = [&](double tk) {
    TrajectorySample smp;
    smp.t = tk;
    smp.s = path.sample(tk).first;
    smp.pose = Pose::from_vector(y.head<3>());
    smp.qdot = y.tail<3>();
    run.trajectory.samples.push_back(std::move(smp));
  };

  push(0.0);
  const double T = path.horizon;
  const long n = static_cast<long>(std::floor(T / h + 1e-9));
  double t = 0.0;
  try {
    for (long k = 0; k < n; ++k) {
      y = rk4_step(rhs, t, y, h);
      t = (k + 1) * h;
      push(t);
    }
    if (T - t > 1e-12 * std::max(1.0, T)) {
      y = rk4_step(rhs, t, y, T - t);
      t = T;
      push(t);
    }
  } catch (const CollisionStop& stop) {
    run.collided = true;
    run.collision_time = stop.time;
  }
  return run;
}

}  // namespace swim
