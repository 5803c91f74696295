#ifndef OTTO_CYCLE_HPP
#define OTTO_CYCLE_HPP

// Four-stroke harmonic Otto cycle: vertex energies, heats and work in the
// exact coth form, the high-temperature reduced forms used by all analytics,
// and the feasibility intervals of the compression ratio.
//
// Units: hbar = k_B = 1. Reduced quantities are in units of 1/beta_h.
// Sign convention: heat and work flowing into the working medium are positive.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "otto/error.hpp"

namespace otto {

enum class StrokeProtocol { Adiabatic, SuddenSwitch };

/// Which work stroke is sudden. The asymmetric regimes have exactly one
/// sudden stroke; the symmetric ones treat both strokes alike.
enum class Regime { SuddenCompression, SuddenExpansion, Adiabatic, SuddenSwitch };

enum class Device { Engine, Fridge };

inline const char* to_string(Regime r) noexcept {
  switch (r) {
  case Regime::SuddenCompression: return "sc";
  case Regime::SuddenExpansion: return "se";
  case Regime::Adiabatic: return "adi";
  case Regime::SuddenSwitch: return "ss";
  }
  return "?";
}

inline const char* to_string(Device d) noexcept {
  return d == Device::Engine ? "engine" : "fridge";
}

inline bool is_asymmetric(Regime r) noexcept {
  return r == Regime::SuddenCompression || r == Regime::SuddenExpansion;
}

/// (compression stroke A->B, expansion stroke C->D)
inline std::pair<StrokeProtocol, StrokeProtocol> stroke_protocols(Regime r) noexcept {
  using P = StrokeProtocol;
  switch (r) {
  case Regime::SuddenCompression: return {P::SuddenSwitch, P::Adiabatic};
  case Regime::SuddenExpansion: return {P::Adiabatic, P::SuddenSwitch};
  case Regime::Adiabatic: return {P::Adiabatic, P::Adiabatic};
  case Regime::SuddenSwitch: return {P::SuddenSwitch, P::SuddenSwitch};
  }
  return {P::Adiabatic, P::Adiabatic};
}

struct CycleConfig {
  double beta_c = 1.0;  // cold bath
  double beta_h = 1.0;  // hot bath
  double omega_c = 1.0; // low frequency
  double omega_h = 1.0; // high frequency
  StrokeProtocol compression = StrokeProtocol::Adiabatic;
  StrokeProtocol expansion = StrokeProtocol::Adiabatic;

  // Degenerate equalities (beta_c == beta_h, omega_c == omega_h) are accepted;
  // they describe cycles that exchange no net work.
  void validate() const {
    if (!(beta_h > 0.0) || !(beta_c >= beta_h) || !std::isfinite(beta_c))
      throw domain_error("invalid bath temperatures", "beta_c >= beta_h > 0");
    if (!(omega_c > 0.0) || !(omega_h >= omega_c) || !std::isfinite(omega_h))
      throw domain_error("invalid oscillator frequencies", "0 < omega_c <= omega_h");
  }
};

/// Dimensionless coordinates: z = omega_c/omega_h, tau = beta_h/beta_c.
struct ReducedParams {
  double z = 0.5;
  double tau = 0.5;

  double eta_c() const noexcept { return 1.0 - tau; }
  double zeta_c() const noexcept { return tau / (1.0 - tau); }

  static ReducedParams from(const CycleConfig& c) {
    return {c.omega_c / c.omega_h, c.beta_h / c.beta_c};
  }
};

inline double tau_from_eta_c(double eta_c) noexcept { return 1.0 - eta_c; }
inline double tau_from_zeta_c(double zeta_c) noexcept { return zeta_c / (1.0 + zeta_c); }

struct EnergyLedger {
  double h_a = 0, h_b = 0, h_c = 0, h_d = 0;
  double q_h = 0; // hot isochore B->C
  double q_c = 0; // cold isochore D->A
  double w_net = 0;
};

namespace detail {

inline void require_tau(double tau) {
  if (!(tau > 0.0 && tau < 1.0))
    throw domain_error("temperature ratio out of range, tau=" + fmt_num(tau), "0 < tau < 1");
}

inline void require_positive_z(double z) {
  if (!(z > 0.0) || !std::isfinite(z))
    throw domain_error("compression ratio singular, z=" + fmt_num(z), "z > 0");
}

inline void require_asymmetric(Regime r, const char* what) {
  if (!is_asymmetric(r))
    throw domain_error(std::string(what) + " is defined for the asymmetric regimes only",
                       "regime in {sc, se}");
}

/// coth(x) for x > 0, accurate for small x.
inline double coth(double x) { return 1.0 + 2.0 / std::expm1(2.0 * x); }

/// (omega/2) coth(beta omega / 2); tends to 1/beta as beta*omega -> 0.
inline double thermal_energy(double omega, double beta) {
  return 0.5 * omega * coth(0.5 * beta * omega);
}

} // namespace detail

/// 1 for a quasistatic stroke, (wc^2 + wh^2)/(2 wc wh) for an instantaneous quench.
inline double adiabaticity(StrokeProtocol p, double omega_c, double omega_h) {
  if (!(omega_c > 0.0) || !(omega_h > 0.0))
    throw domain_error("nonpositive oscillator frequency", "omega_c > 0 and omega_h > 0");
  if (p == StrokeProtocol::Adiabatic)
    return 1.0;
  // (a^2 + b^2)/(2ab) = 1 + (a - b)^2/(2ab), which keeps the result >= 1 exactly.
  const double d = omega_c - omega_h;
  return 1.0 + d * d / (2.0 * omega_c * omega_h);
}

inline EnergyLedger energy_ledger(const CycleConfig& cfg) {
  cfg.validate();
  const double lam_ab = adiabaticity(cfg.compression, cfg.omega_c, cfg.omega_h);
  const double lam_cd = adiabaticity(cfg.expansion, cfg.omega_c, cfg.omega_h);
  const double cold = detail::coth(0.5 * cfg.beta_c * cfg.omega_c);
  const double hot = detail::coth(0.5 * cfg.beta_h * cfg.omega_h);

  EnergyLedger l;
  l.h_a = 0.5 * cfg.omega_c * cold;
  l.h_b = 0.5 * cfg.omega_h * lam_ab * cold;
  l.h_c = 0.5 * cfg.omega_h * hot;
  l.h_d = 0.5 * cfg.omega_c * lam_cd * hot;
  l.q_h = l.h_c - l.h_b;
  l.q_c = l.h_a - l.h_d;
  l.w_net = l.q_h + l.q_c;
  return l;
}

struct EngineHeat {
  double q_h = 0; // absorbed from the hot bath
  double w = 0;   // net extracted work
};

struct FridgeHeat {
  double q_c = 0;  // cooling load drawn from the cold bath
  double w_in = 0; // invested work, positive in refrigerator mode
};

/// High-temperature heat and work of the engine, units of 1/beta_h.
inline EngineHeat high_T_engine_quantities(Regime r, ReducedParams p) {
  detail::require_asymmetric(r, "high-T engine quantities");
  detail::require_tau(p.tau);
  detail::require_positive_z(p.z);
  const double z = p.z, t = p.tau;
  if (r == Regime::SuddenCompression)
    return {1.0 - 0.5 * t * (1.0 + 1.0 / (z * z)), (1.0 - z) * (1.0 - (1.0 + z) * t / (2.0 * z * z))};
  return {1.0 - t / z, (z - 1.0) * (t / z - 0.5 * (1.0 + z))};
}

/// High-temperature cooling load and invested work of the refrigerator,
/// units of 1/beta_h. w_in is the negated net work of the cycle.
inline FridgeHeat high_T_fridge_quantities(Regime r, ReducedParams p) {
  detail::require_asymmetric(r, "high-T fridge quantities");
  detail::require_tau(p.tau);
  detail::require_positive_z(p.z);
  const double z = p.z, t = p.tau;
  if (r == Regime::SuddenCompression)
    return {t - z, (1.0 - z) * (t * (1.0 + z) / (2.0 * z * z) - 1.0)};
  return {t - 0.5 * (1.0 + z * z), (1.0 - z) * (t / z - 0.5 * (z + 1.0))};
}

struct HighTLedger {
  double q_h = 0;
  double q_c = 0;
  double w = 0; // q_h + q_c
};

/// High-temperature limit of energy_ledger for any protocol pair, with
/// coth(x) -> 1/x. Units of 1/beta_h; the sudden-stroke lambda depends on z only.
inline HighTLedger high_T_ledger(Regime r, double z, double tau) {
  detail::require_tau(tau);
  detail::require_positive_z(z);
  const auto [comp, exp] = stroke_protocols(r);
  const double lam_ab = adiabaticity(comp, z, 1.0);
  const double lam_cd = adiabaticity(exp, z, 1.0);
  HighTLedger l;
  l.q_h = 1.0 - tau * lam_ab / z;
  l.q_c = tau - z * lam_cd;
  l.w = l.q_h + l.q_c;
  return l;
}

/// Open interval of compression ratios. Empty when lo >= hi.
struct Interval {
  double lo = 0;
  double hi = 0;

  bool empty() const noexcept { return !(lo < hi); }
  bool contains(double x) const noexcept { return x > lo && x < hi; }
  double width() const noexcept { return empty() ? 0.0 : hi - lo; }

  /// Shrinks both ends by rel * width.
  Interval shrunk(double rel) const noexcept {
    const double m = rel * width();
    return {lo + m, hi - m};
  }
};

/// Compression ratios z for which the device runs: engine needs w > 0 and
/// q_h > 0, refrigerator needs q_c > 0 and w_in > 0.
inline Interval feasible_interval(Device d, Regime r, double tau) {
  detail::require_tau(tau);
  // positive root of 2z^2 - tau z - tau
  const auto sc_root = [tau] { return (tau + std::sqrt(tau * tau + 8.0 * tau)) / 4.0; };
  // positive root of z^2 + z - 2 tau, written without cancellation
  const auto se_root = [tau] { return 4.0 * tau / (1.0 + std::sqrt(1.0 + 8.0 * tau)); };
  const auto fridge_cut = [tau] {
    return tau > 0.5 ? std::sqrt(2.0 * tau - 1.0) : 0.0;
  };

  if (d == Device::Engine) {
    switch (r) {
    case Regime::SuddenCompression: return {sc_root(), 1.0};
    case Regime::SuddenExpansion: return {std::max(tau, se_root()), 1.0};
    case Regime::Adiabatic: return {tau, 1.0};
    case Regime::SuddenSwitch: return {std::sqrt(tau), 1.0};
    }
  } else {
    switch (r) {
    case Regime::SuddenCompression:
    case Regime::Adiabatic: return {0.0, tau};
    case Regime::SuddenExpansion:
    case Regime::SuddenSwitch: return {0.0, fridge_cut()};
    }
  }
  return {};
}

} // namespace otto

#endif
