// Grand matrix pair shared by both fluid models: a symmetric positive
// definite 3x3 rigid matrix and a 3xm shape-coupling map.

#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "swim/se2.hpp"
#include "swim/shape_path.hpp"

namespace swim {

struct GrandMatrices {
  Mat3 Mr = Mat3::Zero();
  Eigen::Matrix<double, 3, Eigen::Dynamic> N;

  [[nodiscard]] double symmetry_residual() const {
    return (Mr - Mr.transpose()).norm();
  }

  [[nodiscard]] double min_eigenvalue() const {
    return Eigen::SelfAdjointEigenSolver<Mat3>(Mr).eigenvalues().minCoeff();
  }

  /// Body twist responding to the shape rate: -Mr^{-1} N sdot.
  [[nodiscard]] BodyTwist respond(const ShapeVec& sdot) const {
    const Vec3 rhs = N * sdot;
    const Vec3 tw = Mr.ldlt().solve(-rhs);
    return {tw[0], {tw[1], tw[2]}};
  }

  void require_spd(const char* who) const {
    const double floor = 1e-12 * Mr.trace();
    if (!(min_eigenvalue() > floor))
      throw std::runtime_error(std::string(who) +
                               ": singular assembly, matrix not positive "
                               "definite");
  }
};

}  // namespace swim
