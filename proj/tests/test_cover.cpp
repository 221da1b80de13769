#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "swim/cover.hpp"
#include "swim/numerics.hpp"

using namespace swim;

namespace {

struct Sampled {
  std::vector<double> t, s;
};

template <class F>
Sampled sample(const F& f, double t0, double t1, int n) {
  Sampled out;
  for (int i = 0; i <= n; ++i) {
    const double t = t0 + (t1 - t0) * i / n;
    out.t.push_back(t);
    out.s.push_back(f(t));
  }
  return out;
}

}  // namespace

TEST_CASE("lift: constant path lifts to a constant") {
  const Sampled p = sample([](double) { return 0.7; }, 0.0, 5.0, 100);
  const LiftedPath lp = lift(p.t, p.s, 0.7, true);
  for (double v : lp.lifted) CHECK(v == 0.7);
  CHECK(lift_length(lp) == 0.0);
}

TEST_CASE("lift: two windings on the circle are recovered") {
  const Sampled p = sample(
      [](double t) { return wrap_angle(t); }, 0.0, 4.0 * pi, 4000);
  const LiftedPath lp = lift(p.t, p.s, 0.0, true);
  for (std::size_t i = 0; i < lp.lifted.size(); ++i)
    CHECK(lp.lifted[i] == doctest::Approx(p.t[i]).epsilon(1e-12));
  CHECK(lift_length(lp) == doctest::Approx(4.0 * pi).epsilon(1e-12));
}

TEST_CASE("lift: base-point shift moves the lift, not the verdict") {
  const Sampled p = sample(
      [](double t) { return wrap_angle(t); }, 0.0, 4.0 * pi, 4000);
  const LiftedPath a = lift(p.t, p.s, 0.0, true);
  const LiftedPath b = lift(p.t, p.s, 2.0 * pi, true);
  for (std::size_t i = 0; i < a.lifted.size(); ++i)
    CHECK(b.lifted[i] - a.lifted[i] == doctest::Approx(2.0 * pi));
  CHECK(lift_length(a) == doctest::Approx(lift_length(b)));
  CHECK(verdict(a).verdict == verdict(b).verdict);
  CHECK(verdict(a).lift_tv == doctest::Approx(verdict(b).lift_tv));
}

TEST_CASE("lift: projection round-trip") {
  const Sampled p = sample(
      [](double t) { return wrap_angle(1.7 * t + 0.4 * std::sin(t)); },
      0.0, 20.0, 20000);
  const LiftedPath lp = lift(p.t, p.s, p.s.front(), true);
  for (std::size_t i = 0; i < lp.lifted.size(); ++i)
    CHECK(std::abs(wrap_angle(lp.lifted[i] - p.s[i])) < 1e-9);
}

TEST_CASE("lift: rejects a base point off the fiber and undersampling") {
  const Sampled p = sample(
      [](double t) { return wrap_angle(t); }, 0.0, 10.0, 1000);
  CHECK_THROWS_AS((void)lift(p.t, p.s, 0.3, true), std::invalid_argument);

  // increments of exactly pi are ambiguous on the circle
  const std::vector<double> t{0.0, 1.0, 2.0};
  const std::vector<double> s{0.0, pi, 2.0 * pi};
  CHECK_THROWS_AS((void)lift(t, s, 0.0, true), std::runtime_error);
}

TEST_CASE("lift_length: damped oscillation matches the quadrature oracle") {
  auto theta = [](double t) { return std::exp(-t) * std::sin(t); };
  auto theta_dot = [](double t) {
    return std::exp(-t) * (std::cos(t) - std::sin(t));
  };
  const Sampled p = sample(theta, 0.0, 20.0, 20000);
  const LiftedPath lp = lift(p.t, p.s, p.s.front(), false);
  const double oracle = adaptive_simpson(
      [&](double t) { return std::abs(theta_dot(t)); }, 0.0, 20.0, 1e-9);
  CHECK(lift_length(lp) == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("verdict: damped path closes up") {
  const Sampled p = sample(
      [](double t) { return std::exp(-0.3 * t) * std::sin(2.0 * t); },
      0.0, 40.0, 40000);
  const LiftedPath lp = lift(p.t, p.s, p.s.front(), false);
  const VerdictReport rep = verdict(lp, 0.1, 2.0);
  CHECK(rep.verdict == LiftVerdict::FiniteLiftLength);
  CHECK(rep.witness_bound > 0.0);
}

TEST_CASE("verdict: uniform winding keeps growing") {
  const Sampled p = sample(
      [](double t) { return wrap_angle(t); }, 0.0, 30.0, 30000);
  const LiftedPath lp = lift(p.t, p.s, 0.0, true);
  const VerdictReport rep = verdict(lp);
  CHECK(rep.verdict == LiftVerdict::GrowingLift);
  CHECK(rep.tail_growth_rate == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("verdict: periodic reciprocal stroke has a compact image") {
  const Sampled p = sample(
      [](double t) { return pi / 3.0 * std::cos(t); }, 0.0, 8.0 * pi, 40000);
  const LiftedPath lp = lift(p.t, p.s, p.s.front(), false);
  const VerdictReport rep = verdict(lp);
  CHECK(rep.verdict == LiftVerdict::FiniteLiftLength);
  CHECK(rep.image_lo == doctest::Approx(-pi / 3.0).epsilon(1e-6));
  CHECK(rep.image_hi == doctest::Approx(pi / 3.0).epsilon(1e-6));
}

TEST_CASE("verdict: witness integral respects the circle metric") {
  // winding image of width w on the circle: bound K * w
  const Sampled p = sample(
      [](double t) { return wrap_angle(0.5 * t); }, 0.0, 2.0, 2000);
  const LiftedPath lp = lift(p.t, p.s, 0.0, true);
  const VerdictReport rep = verdict(lp, 0.5, 3.0, 1e9);  // force Finite
  CHECK(rep.witness_bound == doctest::Approx(3.0 * 1.0).epsilon(1e-6));
}
