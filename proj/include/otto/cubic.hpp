#ifndef OTTO_CUBIC_HPP
#define OTTO_CUBIC_HPP

// Real roots of cubics in the three-real-root (casus irreducibilis) regime,
// written with cosines and arccosines, plus the cosh continuation used when a
// caller's argument leaves [-1, 1].

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "otto/error.hpp"

namespace otto::cubic {

/// Slack allowed on the arccos argument before it counts as out of range.
inline constexpr double arccos_slack = 1e-12;

/// 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2
inline double discriminant(double a, double b, double c, double d) {
  if (a == 0.0)
    throw domain_error("leading coefficient is zero, not a cubic", "a != 0");
  return 18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * a * c * c * c -
         27.0 * a * a * d * d;
}

/// y^3 + A y^2 + B y + C, with the discriminant of the original a y^3 + ... form.
struct MonicCubic {
  double A = 0;
  double B = 0;
  double C = 0;
  double discriminant = 0;

  static MonicCubic from(double a, double b, double c, double d) {
    const double disc = cubic::discriminant(a, b, c, d);
    return {b / a, c / a, d / a, disc};
  }

  double operator()(double y) const noexcept { return ((y + A) * y + B) * y + C; }

  /// A^2 - 3B; positive whenever the cubic has three distinct real roots.
  double shift() const noexcept { return A * A - 3.0 * B; }

  /// -(2A^3 - 9AB + 27C) / (2 (A^2 - 3B)^{3/2})
  double arccos_argument() const noexcept {
    const double p = shift();
    return -(2.0 * A * A * A - 9.0 * A * B + 27.0 * C) / (2.0 * p * std::sqrt(p));
  }
};

/// Phase offset 2*pi*k/3 inside the cosine, k in {0, 1, 2}.
class TrigBranch {
public:
  constexpr explicit TrigBranch(int k) : k_(k) {
    if (k < 0 || k > 2)
      throw domain_error("trig branch index out of range", "k in {0, 1, 2}");
  }
  constexpr int index() const noexcept { return k_; }
  constexpr double phase() const noexcept { return 2.0 * std::numbers::pi * k_ / 3.0; }

private:
  int k_;
};

namespace detail {

inline double clamp_arccos_argument(double x) {
  if (!(std::abs(x) <= 1.0 + arccos_slack))
    throw domain_error("cubic is not in the trigonometric regime, arccos argument=" +
                           otto::detail::fmt_num(x),
                       "|arccos argument| <= 1");
  return std::clamp(x, -1.0, 1.0);
}

inline double require_shift(const MonicCubic& m) {
  const double p = m.shift();
  if (!(p > 0.0))
    throw domain_error("cubic is not in the trigonometric regime", "A^2 - 3B > 0");
  return p;
}

} // namespace detail

/// -A/3 + (2/3) sqrt(A^2 - 3B) cos[(1/3) arccos(arg) + 2 pi k / 3]
inline double trig_root(const MonicCubic& m, TrigBranch branch) {
  const double p = detail::require_shift(m);
  const double x = detail::clamp_arccos_argument(m.arccos_argument());
  return -m.A / 3.0 + (2.0 / 3.0) * std::sqrt(p) * std::cos(std::acos(x) / 3.0 + branch.phase());
}

/// The three branch roots, ascending.
inline std::array<double, 3> all_roots(const MonicCubic& m) {
  std::array<double, 3> r{trig_root(m, TrigBranch(0)), trig_root(m, TrigBranch(1)),
                          trig_root(m, TrigBranch(2))};
  std::sort(r.begin(), r.end());
  return r;
}

/// cos(arccos(x)/3), continued to cosh(arccosh(x)/3) for x > 1. Both are the
/// real value of the Chebyshev inverse T_3^{-1}(x) on the principal branch.
inline double third_angle_cos(double x) {
  if (x > 1.0 + arccos_slack)
    return std::cosh(std::acosh(x) / 3.0);
  return std::cos(std::acos(detail::clamp_arccos_argument(x)) / 3.0);
}

/// Branch-0 root in the trigonometric regime; outside it (|arg| > 1, one real
/// root) the hyperbolic form of the same expression. Requires A^2 - 3B > 0.
inline double principal_root(const MonicCubic& m) {
  const double p = detail::require_shift(m);
  const double x = m.arccos_argument();
  const double scale = (2.0 / 3.0) * std::sqrt(p);
  if (x < -1.0 - arccos_slack)
    return -m.A / 3.0 - scale * std::cosh(std::acosh(-x) / 3.0);
  return -m.A / 3.0 + scale * third_angle_cos(x);
}

} // namespace otto::cubic

#endif
