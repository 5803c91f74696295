#ifndef OTTO_FRIDGE_HPP
#define OTTO_FRIDGE_HPP

// Refrigerator-side closed forms in the high-temperature limit, parametrized
// by the Carnot COP zeta_c = tau/(1 - tau).
//
// The COP-maximizing compression ratio is the k = 2 trigonometric root of the
// same cubic whose k = 0 root maximizes the engine efficiency; the other
// roots fall outside the refrigerator's feasible interval.

#include <cmath>
#include <numbers>

#include "otto/cycle.hpp"
#include "otto/error.hpp"
#include "otto/trace.hpp"

namespace otto::fridge {

struct FridgePoint {
  double z = 0;
  double zeta = 0;
  double q_c = 0;
  double w_in = 0;
  double omega_value = 0;
};

namespace detail {

using otto::detail::fmt_num;

inline constexpr double branch_offset = 4.0 * std::numbers::pi / 3.0;

/// Sudden expansion and sudden switch only cool when tau > 1/2.
inline bool needs_hot_cold_gap(Regime r) noexcept {
  return r == Regime::SuddenExpansion || r == Regime::SuddenSwitch;
}

inline void require_zeta_c(Regime r, double zeta_c) {
  if (!(zeta_c > 0.0) || !std::isfinite(zeta_c))
    throw domain_error("Carnot COP out of range, zeta_c=" + fmt_num(zeta_c), "zeta_c > 0");
  if (needs_hot_cold_gap(r) && !(zeta_c > 1.0))
    throw infeasible_device(std::string("refrigerator cannot cool in regime ") + to_string(r) +
                                " at zeta_c=" + fmt_num(zeta_c),
                            "zeta_c > 1");
}

inline FridgeHeat require_fridge_point(Regime r, double z, double tau) {
  otto::detail::require_tau(tau);
  if (feasible_interval(Device::Fridge, r, tau).empty())
    throw infeasible_device(std::string("refrigerator cannot cool in regime ") + to_string(r) +
                                " at tau=" + fmt_num(tau),
                            "tau > 1/2");
  otto::detail::require_positive_z(z);
  if (!(z < 1.0))
    throw domain_error("refrigerator infeasible at z=" + fmt_num(z), "z < 1");
  const FridgeHeat h = high_T_fridge_quantities(r, {z, tau});
  if (h.q_c < 0.0)
    throw domain_error("refrigerator infeasible at z=" + fmt_num(z) + ", tau=" + fmt_num(tau),
                       "q_c >= 0");
  if (!(h.w_in > 0.0))
    throw domain_error("refrigerator infeasible at z=" + fmt_num(z) + ", tau=" + fmt_num(tau),
                       "w_in > 0");
  return h;
}

} // namespace detail

/// High-temperature COP q_c / w_in at compression ratio z.
inline double cop_ht(Regime r, double z, double tau) {
  otto::detail::require_asymmetric(r, "cop_ht");
  detail::require_fridge_point(r, z, tau);
  const double t = tau;
  if (r == Regime::SuddenCompression)
    return 2.0 * z * z * (z - t) / ((1.0 - z) * (2.0 * z * z - t * (1.0 + z)));
  return z * (2.0 * t - (z * z + 1.0)) / ((z - 1.0) * (z * (1.0 + z) - 2.0 * t));
}

/// COP-maximizing compression ratio (branch k = 2).
inline Traced<double> z_star_max_cop(Regime r, double zeta_c) {
  otto::detail::require_asymmetric(r, "z_star_max_cop");
  detail::require_zeta_c(r, zeta_c);
  const double zc = zeta_c;
  Traced<double> out;
  if (r == Regime::SuddenCompression) {
    const double theta = std::acos(-std::sqrt(zc * (2.0 + zc)) / (1.0 + zc));
    // G = sin(pi/6 - theta/3) = -cos(theta/3 + 4 pi/3)
    const double g = -std::cos(theta / 3.0 + detail::branch_offset);
    out.trace.set("G", g);
    out.value = -2.0 * std::sqrt(zc / (2.0 + zc)) * g;
  } else {
    const double theta = std::acos((2.0 - zc * zc) / (zc * zc));
    const double j =
        zc / (2.0 * (1.0 + zc)) + zc / (1.0 + zc) * std::cos(theta / 3.0 + detail::branch_offset);
    out.trace.set("J", j);
    out.value = j;
  }
  out.trace.set("z_star", out.value);
  return out;
}

/// Maximum COP of the regime (symbols L and X).
inline Traced<double> cop_max(Regime r, double zeta_c) {
  Traced<double> out = z_star_max_cop(r, zeta_c);
  const double zc = zeta_c;
  if (r == Regime::SuddenCompression) {
    const double g = out.trace.at("G");
    const double s = std::sqrt(zc / (2.0 + zc));
    const double l = 8.0 * g * g * zc * (zc + 2.0 * g * (1.0 + zc) * s) /
                     ((2.0 + zc) * (1.0 + 2.0 * g * s) *
                      (zc * (1.0 - 2.0 * g * s) - 8.0 * g * g * zc * (1.0 + zc) / (2.0 + zc)));
    out.trace.set("L", l);
    out.value = l;
  } else {
    const double j = out.trace.at("J");
    const double x = j * (2.0 * zc - (1.0 + zc) * (1.0 + j * j)) /
                     ((j - 1.0) * (j * (j + 1.0) * (1.0 + zc) - 2.0 * zc));
    out.trace.set("X", x);
    out.value = x;
  }
  return out;
}

/// Omega = 2 q_c - zeta_max w_in with the same-regime zeta_max.
inline double omega_objective_fridge(Regime r, double z, double tau) {
  otto::detail::require_asymmetric(r, "omega_objective_fridge");
  const FridgeHeat h = detail::require_fridge_point(r, z, tau);
  const double zeta_max = cop_max(r, tau / (1.0 - tau)).value;
  return 2.0 * h.q_c - zeta_max * h.w_in;
}

/// COP at maximum Omega as a function of the Carnot COP.
inline Traced<double> cop_at_max_omega(Regime r, double zeta_c) {
  detail::require_zeta_c(r, zeta_c);
  const double zc = zeta_c;
  switch (r) {
  case Regime::SuddenCompression: {
    Traced<double> out = cop_max(r, zc);
    const double l = out.value;
    const double m = std::cbrt(l * zc / ((1.0 + zc) * (2.0 + l)));
    out.trace.set("M", m);
    out.value = 2.0 * m * m * (zc - m * (1.0 + zc)) /
                ((1.0 - m) * (zc * (m + 1.0) - 2.0 * m * m * (1.0 + zc)));
    return out;
  }
  case Regime::SuddenExpansion: {
    Traced<double> out = cop_max(r, zc);
    const double x = out.value;
    const double y = std::cbrt(x * zc / ((1.0 + zc) * (2.0 + x)));
    out.trace.set("Y", y);
    out.value = y * (2.0 * zc - (y * y + 1.0) * (1.0 + zc)) /
                ((y - 1.0) * (y * (1.0 + y) * (1.0 + zc) - 2.0 * zc));
    return out;
  }
  case Regime::Adiabatic: {
    Traced<double> out;
    out.value = zc / (std::sqrt((2.0 + zc) * (1.0 + zc)) - zc);
    return out;
  }
  case Regime::SuddenSwitch: {
    Traced<double> out;
    const double root = 2.0 * std::sqrt(2.0 * zc * (1.0 + zc));
    const double p = std::sqrt(zc * (root - 3.0 * zc - 1.0) / ((1.0 + zc) * (root - 3.0 * (1.0 + zc))));
    out.trace.set("P", p);
    out.value = p * (1.0 + p * (1.0 + zc) - zc) / ((1.0 - p) * (p * (1.0 + zc) - zc));
    return out;
  }
  }
  return {};
}

inline FridgePoint fridge_point(Regime r, double z, double tau) {
  otto::detail::require_asymmetric(r, "fridge_point");
  const FridgeHeat h = detail::require_fridge_point(r, z, tau);
  const double zeta_max = cop_max(r, tau / (1.0 - tau)).value;
  return {z, cop_ht(r, z, tau), h.q_c, h.w_in, 2.0 * h.q_c - zeta_max * h.w_in};
}

} // namespace otto::fridge

#endif
