#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "otto/engine.hpp"
#include "otto/oracle.hpp"

using namespace otto;
using Catch::Matchers::WithinAbs;

TEST_CASE("maximize a quadratic") {
  const auto rep = oracle::maximize({[](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0});
  CHECK_THAT(rep.x_star, WithinAbs(0.3, 1e-9));
  CHECK(rep.bracket_lo <= rep.x_star);
  CHECK(rep.x_star <= rep.bracket_hi);
  CHECK(rep.evaluations > 512);
}

TEST_CASE("maximize work and Omega of the sudden-compression engine") {
  const double t = 0.5;
  const auto dom = feasible_interval(Device::Engine, Regime::SuddenCompression, t);
  const auto w = oracle::maximize(
      {[&](double z) { return high_T_engine_quantities(Regime::SuddenCompression, {z, t}).w; },
       dom.lo, dom.hi});
  CHECK_THAT(w.x_star, WithinAbs(std::cbrt(t), 1e-8));
  const auto om = oracle::maximize(
      {[&](double z) { return engine::omega_objective(Regime::SuddenCompression, z, t); }, dom.lo,
       dom.hi});
  CHECK_THAT(om.x_star, WithinAbs(0.769, 1e-3));
}

TEST_CASE("determinism and bracketing soundness") {
  const auto f = [](double x) { return std::sin(3.0 * x) + 0.1 * x; };
  const oracle::ScalarProblem p{f, 0.0, 2.0};
  const auto a = oracle::maximize(p);
  const auto b = oracle::maximize(p);
  CHECK(a.x_star == b.x_star);
  CHECK(a.f_star == b.f_star);
  CHECK(a.evaluations == b.evaluations);
  const double margin = oracle::boundary_margin * 2.0;
  for (int i = 0; i < p.grid_points; ++i) {
    const double x = margin + (2.0 - 2.0 * margin) * i / (p.grid_points - 1);
    REQUIRE(a.f_star >= f(x));
  }
}

TEST_CASE("doubling the grid does not move the maximizer") {
  // Near a smooth maximum f changes by ~(dx)^2, so x_star is resolved to about
  // sqrt(machine epsilon); the bound is the suite's 1e-6 agreement tolerance.
  for (double e = 0.05; e < 0.951; e += 0.05) {
    const double t = 1.0 - e;
    for (Regime r : {Regime::SuddenCompression, Regime::SuddenExpansion}) {
      const auto dom = feasible_interval(Device::Engine, r, t);
      oracle::ScalarProblem p{[&](double z) { return engine::omega_objective(r, z, t); }, dom.lo,
                              dom.hi};
      const auto a = oracle::maximize(p);
      p.grid_points = 1024;
      const auto b = oracle::maximize(p);
      REQUIRE(std::abs(a.x_star - b.x_star) <= 1e-6);
    }
  }
}

TEST_CASE("non-finite objectives") {
  const auto nan = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
  CHECK_THROWS_AS(oracle::maximize({nan, 0.0, 1.0}), otto::no_feasible_point);
  // Skips the non-finite part of the domain.
  const auto half = [](double x) {
    return x < 0.5 ? std::numeric_limits<double>::quiet_NaN() : -(x - 0.7) * (x - 0.7);
  };
  CHECK_THAT(oracle::maximize({half, 0.0, 1.0}).x_star, WithinAbs(0.7, 1e-9));
  CHECK_THROWS(oracle::maximize({half, 1.0, 0.0}));
}

TEST_CASE("central differences") {
  CHECK_THAT(oracle::central_derivative([](double x) { return x; }, 0.7, 1e-3), WithinAbs(1.0, 1e-12));
  CHECK_THAT(oracle::central_derivative([](double x) { return x * x; }, 2.0, 1e-3),
             WithinAbs(4.0, 1e-10));
  CHECK_THAT(oracle::central_second_derivative([](double x) { return x * x * x; }, 2.0, 1e-3),
             WithinAbs(12.0, 1e-6));
  CHECK_THROWS(oracle::central_derivative([](double x) { return std::log(x); }, 0.0, 1e-3));
  CHECK_THROWS(oracle::central_derivative([](double x) { return x; }, 0.0, 0.0));
}

TEST_CASE("derivative of eta at max Omega near equilibrium") {
  const auto f = [](double e) { return engine::eta_at_max_omega(Regime::SuddenCompression, e).value; };
  const auto c = engine::taylor_coeffs(Regime::SuddenCompression);
  const double x = 1e-3;
  // Derivative of the cubic Taylor polynomial at x.
  const double poly = c.c1 + 2.0 * c.c2 * x + 3.0 * c.c3 * x * x;
  CHECK_THAT(oracle::central_derivative(f, x, 5e-4), WithinAbs(poly, 1e-6));
  CHECK_THAT(oracle::central_derivative(f, x, 5e-4), WithinAbs(0.26314, 5e-4));
}
