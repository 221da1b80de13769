// Small numerical kernels shared across the library: fixed-step RK4,
// composite and adaptive quadrature, and a natural cubic spline.

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace swim {

/// One classical Runge-Kutta step for y' = f(t, y).
template <class Rhs>
Eigen::VectorXd rk4_step(const Rhs& f, double t, const Eigen::VectorXd& y,
                         double h) {
  const Eigen::VectorXd k1 = f(t, y);
  const Eigen::VectorXd k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
  const Eigen::VectorXd k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
  const Eigen::VectorXd k4 = f(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Composite Simpson rule with n subintervals (n rounded up to even).
template <class F>
double simpson(const F& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

namespace detail {
template <class F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa,
                            double fm, double fb, double whole, double tol,
                            int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}
}  // namespace detail

/// Adaptive Simpson quadrature to absolute tolerance tol.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol,
                        int max_depth = 40) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol,
                                      max_depth);
}

/// Cubic spline through (x_i, y_i) with strictly increasing knots.
/// Not-a-knot end conditions (natural ends for exactly three knots), so the
/// interpolation error stays O(h^4) up to the boundary.
class CubicSpline {
 public:
  CubicSpline() = default;

  CubicSpline(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n)
      throw std::invalid_argument("CubicSpline: need >= 3 matching knots");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x_[i] > x_[i - 1]))
        throw std::invalid_argument("CubicSpline: knots must increase");

    // Solve for the second derivatives M_i.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    auto h = [&](std::size_t i) { return x_[i + 1] - x_[i]; };
    for (std::size_t i = 1; i + 1 < n; ++i) {
      A(i, i - 1) = h(i - 1) / 6.0;
      A(i, i) = (h(i - 1) + h(i)) / 3.0;
      A(i, i + 1) = h(i) / 6.0;
      rhs[i] = (y_[i + 1] - y_[i]) / h(i) - (y_[i] - y_[i - 1]) / h(i - 1);
    }
    if (n == 3) {
      A(0, 0) = A(n - 1, n - 1) = 1.0;  // natural ends
    } else {
      // third derivative continuous across the second and penultimate knots
      A(0, 0) = 1.0 / h(0);
      A(0, 1) = -(1.0 / h(0) + 1.0 / h(1));
      A(0, 2) = 1.0 / h(1);
      A(n - 1, n - 3) = 1.0 / h(n - 3);
      A(n - 1, n - 2) = -(1.0 / h(n - 3) + 1.0 / h(n - 2));
      A(n - 1, n - 1) = 1.0 / h(n - 2);
    }
    const Eigen::VectorXd M = A.partialPivLu().solve(rhs);
    m_.assign(M.data(), M.data() + n);
  }

  [[nodiscard]] double operator()(double x) const {
    const auto [i, t, h] = locate(x);
    const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h /
               6.0;
  }

  [[nodiscard]] double derivative(double x) const {
    const auto [i, t, h] = locate(x);
    const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) *
               h / 6.0;
  }

  [[nodiscard]] double x_min() const { return x_.front(); }
  [[nodiscard]] double x_max() const { return x_.back(); }

 private:
  std::tuple<std::size_t, double, double> locate(double x) const {
    // Clamped extrapolation keeps callers safe at the horizon edges.
    if (x <= x_.front()) x = x_.front();
    if (x >= x_.back()) x = x_.back();
    std::size_t lo = 0, hi = x_.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (x_[mid] > x ? hi : lo) = mid;
    }
    return {lo, x - x_[lo], x_[lo + 1] - x_[lo]};
  }

  std::vector<double> x_, y_, m_;
};

/// Two-point Gauss-Legendre nodes/weights on [0, 1]; exact for cubics.
struct Gauss2 {
  static constexpr double node0 = 0.21132486540518711775;
  static constexpr double node1 = 0.78867513459481288225;
  static constexpr double weight = 0.5;
};

}  // namespace swim
