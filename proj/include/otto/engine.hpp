#ifndef OTTO_ENGINE_HPP
#define OTTO_ENGINE_HPP

// Engine-side closed forms in the high-temperature limit: efficiency as a
// function of the compression ratio, its maximum, the Omega objective
// 2W - eta_max Q_h and the efficiency at its maximum, the maximum-work
// efficiency, near-equilibrium expansion coefficients and fractional work loss.
//
// Every asymmetric closed form is expressed in tau = 1 - eta_c or in eta_c
// directly; intermediates are reported through a Trace.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "otto/cubic.hpp"
#include "otto/cycle.hpp"
#include "otto/error.hpp"
#include "otto/trace.hpp"

namespace otto::engine {

struct EnginePoint {
  double z = 0;
  double eta = 0;
  double w = 0;
  double q_h = 0;
  double omega_value = 0;
};

/// Coefficients of eta_c, eta_c^2, eta_c^3 in the expansion of eta at max Omega.
struct TaylorCoeffs {
  double c1 = 0;
  double c2 = 0;
  double c3 = 0;
};

inline constexpr double eta_c_min = 1e-6;
inline constexpr double eta_c_max = 1.0 - 1e-6;

namespace detail {

using otto::detail::fmt_num;

inline void require_eta_c(double eta_c) {
  if (!(eta_c >= eta_c_min && eta_c <= eta_c_max))
    throw domain_error("Carnot efficiency out of range, eta_c=" + fmt_num(eta_c),
                       "1e-6 <= eta_c <= 1 - 1e-6");
}

/// Engine operating conditions at a given z; the upper end z = 1 (zero work)
/// is accepted so that boundary points can be queried.
inline EngineHeat require_engine_point(Regime r, double z, double tau) {
  otto::detail::require_tau(tau);
  otto::detail::require_positive_z(z);
  if (z > 1.0)
    throw domain_error("engine infeasible at z=" + fmt_num(z), "z <= 1");
  const EngineHeat h = high_T_engine_quantities(r, {z, tau});
  if (!(h.q_h > 0.0))
    throw domain_error("engine infeasible at z=" + fmt_num(z) + ", tau=" + fmt_num(tau),
                       "q_h > 0");
  if (h.w < 0.0)
    throw domain_error("engine infeasible at z=" + fmt_num(z) + ", tau=" + fmt_num(tau),
                       "w >= 0");
  return h;
}

} // namespace detail

/// High-temperature efficiency w/q_h at compression ratio z.
inline double eta_ht(Regime r, double z, double tau) {
  otto::detail::require_asymmetric(r, "eta_ht");
  detail::require_engine_point(r, z, tau);
  const double t = tau;
  if (r == Regime::SuddenCompression)
    return (2.0 * z * z - t * z - t) * (1.0 - z) / (z * z * (2.0 - t) - t);
  return (z * z - 2.0 * t + z) * (z - 1.0) / (2.0 * (t - z));
}

/// Compression ratio maximizing eta_ht. Sudden compression: root of
/// (2 - tau) z^3 - 3 tau z + 2 tau^2 = 0; sudden expansion: root of
/// 2z^3 - 3 tau z^2 + tau(2 tau - 1) = 0. tau = 1 is accepted (z* = 1).
inline Traced<double> z_star_max_eta(Regime r, double tau) {
  otto::detail::require_asymmetric(r, "z_star_max_eta");
  if (!(tau > 0.0 && tau <= 1.0))
    throw domain_error("temperature ratio out of range", "0 < tau <= 1");
  Traced<double> out;
  if (r == Regime::SuddenCompression) {
    const double n = std::acos(-std::sqrt(tau * (2.0 - tau))) / 3.0;
    out.trace.set("N", n);
    out.value = 2.0 * std::sqrt(tau / (2.0 - tau)) * std::cos(n);
  } else {
    // For tau < 1/2 the argument exceeds 1 and the cosh continuation applies.
    const double f = tau * cubic::third_angle_cos((2.0 - (4.0 - tau) * tau) / (tau * tau));
    out.trace.set("F", f);
    out.value = 0.5 * tau + f;
  }
  out.trace.set("z_star", out.value);
  return out;
}

/// Maximum attainable efficiency of the regime, as a function of tau.
inline Traced<double> eta_max(Regime r, double tau) {
  otto::detail::require_asymmetric(r, "eta_max");
  otto::detail::require_tau(tau);
  Traced<double> out = z_star_max_eta(r, tau);
  const double t = tau;
  if (r == Regime::SuddenCompression) {
    const double n = out.trace.at("N");
    const double cn = std::cos(n);
    const double s = std::sqrt(t / (2.0 - t));
    out.value = (16.0 * s * cn * cn * cn - t - 4.0 * (t + 2.0) * cn * cn + 2.0) /
                ((1.0 + 2.0 * std::cos(2.0 * n)) * (t - 2.0));
  } else {
    const double f = out.trace.at("F");
    out.value = (2.0 - t - 2.0 * f) * (4.0 * f * (t + 1.0) - t * (6.0 - t) + 4.0 * f * f) /
                (16.0 * f - 8.0 * t);
  }
  out.trace.set("eta_max", out.value);
  return out;
}

/// Omega = 2w - eta_max q_h with the same-regime eta_max.
inline double omega_objective(Regime r, double z, double tau) {
  otto::detail::require_asymmetric(r, "omega_objective");
  const EngineHeat h = detail::require_engine_point(r, z, tau);
  return 2.0 * h.w - eta_max(r, tau).value * h.q_h;
}

/// Compression ratio at maximum Omega, in the tau parametrization (symbols A, B).
inline Traced<double> z_star_max_omega(Regime r, double tau) {
  otto::detail::require_asymmetric(r, "z_star_max_omega");
  otto::detail::require_tau(tau);
  Traced<double> out;
  const double t = tau;
  if (r == Regime::SuddenCompression) {
    const double a = std::acos(-std::sqrt(t * (2.0 - t))) / 3.0;
    const double ca = std::cos(a);
    const double s = std::sqrt(t / (2.0 - t));
    out.trace.set("A", a);
    out.value = std::cbrt(t + t * (t - 2.0 + 4.0 * (2.0 + t) * ca * ca - 16.0 * s * ca * ca * ca) /
                                  (2.0 * (t - 2.0) * (1.0 + 2.0 * std::cos(2.0 * a))));
  } else {
    const double cb = cubic::third_angle_cos((2.0 + (t - 4.0) * t) / (t * t));
    const double c2b = 2.0 * cb * cb - 1.0;
    out.trace.set("cos_B", cb);
    out.value = std::cbrt(t + t * (t - 2.0 + 2.0 * t * cb) *
                                  (3.0 * t - 6.0 + 4.0 * (1.0 + t) * cb + 2.0 * t * c2b) /
                                  (32.0 * cb - 16.0));
  }
  out.trace.set("z_star", out.value);
  return out;
}

/// Efficiency at maximum Omega as a function of the Carnot efficiency.
///
/// Sudden compression and expansion use the K and C forms. Adiabatic is
/// 1 - sqrt((2 - eta_c)(1 - eta_c)/2). Sudden switch maximizes over u = z^2:
/// eta_max = eta_c (3 - eta_c - 2 sqrt(2(1 - eta_c))) / (1 + eta_c)^2,
/// H = u* = sqrt((1 - eta_c)(2 - eta_max)/2),
/// eta = (1 - H)(H - tau) / (H (1 + eta_c) - tau).
inline Traced<double> eta_at_max_omega(Regime r, double eta_c) {
  detail::require_eta_c(eta_c);
  const double e = eta_c;
  const double t = 1.0 - e;
  Traced<double> out;
  switch (r) {
  case Regime::SuddenCompression: {
    const double a = std::acos(-std::sqrt(1.0 - e * e)) / 3.0;
    const double ca = std::cos(a);
    const double inner = -1.0 - 4.0 * (e - 3.0) * ca * ca - e -
                         16.0 * std::sqrt((1.0 - e) / (1.0 + e)) * ca * ca * ca;
    const double k =
        std::cbrt(t - t * inner / (2.0 * (1.0 + 2.0 * std::cos(2.0 * a)) * (1.0 + e)));
    out.trace.set("A", a);
    out.trace.set("K", k);
    out.value = (k - 1.0) * (2.0 * k * k - t * (k + 1.0)) / (t - (1.0 + e) * k * k);
    break;
  }
  case Regime::SuddenExpansion: {
    const double dx = (e * e + 2.0 * e - 1.0) / ((e - 1.0) * (e - 1.0));
    const double cd = cubic::third_angle_cos(dx);
    const double c2d = 2.0 * cd * cd - 1.0;
    if (dx <= 1.0)
      out.trace.set("D", std::acos(std::clamp(dx, -1.0, 1.0)) / 3.0);
    out.trace.set("cos_D", cd);
    const double c = std::cbrt(t + (-3.0 - 4.0 * cd * (e - 2.0) - 2.0 * c2d * (e - 1.0) - 3.0 * e) *
                                       t * (-1.0 - e - 2.0 * cd * (e - 1.0)) / (32.0 * cd - 16.0));
    out.trace.set("C", c);
    out.value = (1.0 - c) * (2.0 * (e - 1.0) + c * (c + 1.0)) / (2.0 * (c + e - 1.0));
    break;
  }
  case Regime::Adiabatic: {
    const double z = std::sqrt((2.0 - e) * (1.0 - e) / 2.0);
    out.trace.set("z_star", z);
    out.value = 1.0 - z;
    break;
  }
  case Regime::SuddenSwitch: {
    const double em = e * (3.0 - e - 2.0 * std::sqrt(2.0 * t)) / ((1.0 + e) * (1.0 + e));
    const double h = std::sqrt(t * (2.0 - em) / 2.0);
    out.trace.set("eta_max", em);
    out.trace.set("H", h);
    out.trace.set("z_star", std::sqrt(h));
    out.value = (1.0 - h) * (h - t) / (h * (1.0 + e) - t);
    break;
  }
  }
  return out;
}

/// Both asymmetric regimes extract maximum work at z* = tau^{1/3}.
inline double z_star_max_work(double tau) {
  otto::detail::require_tau(tau);
  return std::cbrt(tau);
}

inline double eta_max_work(Regime r, double eta_c) {
  otto::detail::require_asymmetric(r, "eta_max_work");
  detail::require_eta_c(eta_c);
  const double e = eta_c;
  if (r == Regime::SuddenCompression) {
    const double c = std::cbrt(1.0 - e);
    return (3.0 * c - 3.0 + e) / (c - 1.0 - e);
  }
  const double g = 1.0 - std::pow(1.0 - e, 2.0 / 3.0);
  return (3.0 * g - 2.0 * e) / (2.0 * g);
}

inline TaylorCoeffs taylor_coeffs(Regime r) {
  otto::detail::require_asymmetric(r, "taylor_coeffs");
  constexpr double s3 = std::numbers::sqrt3;
  const double c1 = 11.0 * s3 / 4.0 - 4.5;
  if (r == Regime::SuddenCompression)
    return {c1, (8339.0 - 4804.0 * s3) / 144.0, 5.0 * (-179246.0 + 103503.0 * s3) / 1728.0};
  return {c1, (1414.0 - 815.0 * s3) / 36.0, (-93262.0 + 53853.0 * s3) / 432.0};
}

/// Lost over extracted work, eta_c/eta - 1.
inline double fractional_loss(double eta, double eta_c) {
  if (!(eta > 0.0))
    throw domain_error("efficiency must be positive, eta=" + detail::fmt_num(eta), "eta > 0");
  if (!(eta_c < 1.0) || eta > eta_c)
    throw domain_error("efficiency above Carnot, eta=" + detail::fmt_num(eta), "eta <= eta_c < 1");
  return eta_c / eta - 1.0;
}

inline double fractional_loss_max_work(Regime r, double eta_c) {
  otto::detail::require_asymmetric(r, "fractional_loss_max_work");
  detail::require_eta_c(eta_c);
  const double e = eta_c;
  if (r == Regime::SuddenCompression) {
    const double c = std::cbrt(1.0 - e);
    return (c * (3.0 - e) + e * (2.0 + e) - 3.0) / (3.0 - e - 3.0 * c);
  }
  const double c = std::pow(1.0 - e, 2.0 / 3.0);
  return (c * (2.0 * e - 3.0) - 4.0 * e + 3.0) / (3.0 * c + 2.0 * e - 3.0);
}

inline EnginePoint engine_point(Regime r, double z, double tau) {
  otto::detail::require_asymmetric(r, "engine_point");
  const EngineHeat h = detail::require_engine_point(r, z, tau);
  return {z, eta_ht(r, z, tau), h.w, h.q_h, 2.0 * h.w - eta_max(r, tau).value * h.q_h};
}

} // namespace otto::engine

#endif
