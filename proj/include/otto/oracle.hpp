#ifndef OTTO_ORACLE_HPP
#define OTTO_ORACLE_HPP

// Derivative-free scalar maximization and finite differences. Used only to
// check the closed forms, so it depends on nothing but the objective it is
// handed.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

#include "otto/error.hpp"

namespace otto::oracle {

struct ScalarProblem {
  std::function<double(double)> objective;
  double lo = 0.0; // open interval (lo, hi)
  double hi = 1.0;
  double tolerance = 1e-10; // absolute, in x
  int grid_points = 512;
};

struct OptimumReport {
  double x_star = 0;
  double f_star = 0;
  int evaluations = 0;
  double bracket_lo = 0;
  double bracket_hi = 0;
};

/// Relative shrink applied to the open domain before sampling.
inline constexpr double boundary_margin = 1e-9;

/// Global maximum of a function that is unimodal near its peak: a uniform
/// grid over the shrunk domain locates the best cell, golden-section search
/// refines inside the neighbouring cells. Non-finite samples are skipped.
inline OptimumReport maximize(const ScalarProblem& problem) {
  if (!(problem.lo < problem.hi))
    throw std::invalid_argument("maximize: empty domain");
  if (problem.grid_points < 3)
    throw std::invalid_argument("maximize: grid needs at least 3 points");

  const double margin = boundary_margin * (problem.hi - problem.lo);
  const double a = problem.lo + margin;
  const double b = problem.hi - margin;
  const int n = problem.grid_points;

  OptimumReport rep;
  int best = -1;
  double best_f = -std::numeric_limits<double>::infinity();
  const auto grid_x = [&](int i) { return a + (b - a) * static_cast<double>(i) / (n - 1); };
  const auto eval = [&](double x) {
    ++rep.evaluations;
    const double f = problem.objective(x);
    return std::isfinite(f) ? f : -std::numeric_limits<double>::infinity();
  };

  for (int i = 0; i < n; ++i) {
    const double f = eval(grid_x(i));
    if (f > best_f) {
      best_f = f;
      best = i;
    }
  }
  if (best < 0)
    throw no_feasible_point("maximize: objective is non-finite on every grid point");

  double lo = grid_x(std::max(best - 1, 0));
  double hi = grid_x(std::min(best + 1, n - 1));
  double x_best = grid_x(best);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = eval(c);
  double fd = eval(d);
  for (int it = 0; it < 200 && hi - lo > problem.tolerance; ++it) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = eval(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = eval(d);
    }
  }

  const double x_mid = 0.5 * (lo + hi);
  const double f_mid = eval(x_mid);
  // Keep the best value seen so the report never undercuts a grid sample.
  for (auto [x, f] : {std::pair{c, fc}, std::pair{d, fd}, std::pair{x_mid, f_mid}}) {
    if (f >= best_f) {
      best_f = f;
      x_best = x;
    }
  }
  rep.x_star = x_best;
  rep.f_star = best_f;
  rep.bracket_lo = lo;
  rep.bracket_hi = hi;
  return rep;
}

namespace detail {

inline double sample(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v))
    throw std::domain_error("finite difference: non-finite sample");
  return v;
}

} // namespace detail

/// Central difference with one Richardson step, O(h^4).
inline double central_derivative(const std::function<double(double)>& f, double x, double h) {
  if (!(h > 0.0))
    throw std::invalid_argument("central_derivative: step must be positive");
  const auto d = [&](double s) {
    return (detail::sample(f, x + s) - detail::sample(f, x - s)) / (2.0 * s);
  };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

/// Second central difference with one Richardson step, O(h^4).
inline double central_second_derivative(const std::function<double(double)>& f, double x,
                                        double h) {
  if (!(h > 0.0))
    throw std::invalid_argument("central_second_derivative: step must be positive");
  const double f0 = detail::sample(f, x);
  const auto d2 = [&](double s) {
    return (detail::sample(f, x + s) - 2.0 * f0 + detail::sample(f, x - s)) / (s * s);
  };
  return (4.0 * d2(0.5 * h) - d2(h)) / 3.0;
}

} // namespace otto::oracle

#endif
