#ifndef OTTO_VERIFICATION_HPP
#define OTTO_VERIFICATION_HPP

// Closed form versus numeric oracle. The oracle side works only from the
// generic high-temperature ledger (lambda model) and the feasible intervals,
// never from the closed-form headers it checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "otto/cubic.hpp"
#include "otto/cycle.hpp"
#include "otto/engine.hpp"
#include "otto/fridge.hpp"
#include "otto/oracle.hpp"
#include "otto/sweep.hpp"

namespace otto::verify {

struct Tolerances {
  double omega = 1e-6;   // efficiency / COP at max Omega
  double max_work = 1e-8;
  double maximum = 1e-8; // eta_max, cop_max
};

struct Check {
  std::string name;
  bool passed = false;
  double worst = 0;     // largest deviation, or smallest margin for orderings
  double tolerance = 0; // bound on `worst`; 0 for orderings (margin must be > 0)
};

inline std::vector<double> engine_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 19; ++i)
    g.push_back(0.05 * i);
  return g;
}

inline std::vector<double> fridge_grid() { return {0.25, 0.5, 1.0, 2.0, 3.0, 5.0, 9.0}; }

/// Grid points where a fridge regime operates (sudden expansion and sudden
/// switch need zeta_c > 1).
inline std::vector<double> fridge_grid(Regime r) {
  std::vector<double> g;
  for (double zc : fridge_grid())
    if (zc > 1.0 || r == Regime::SuddenCompression || r == Regime::Adiabatic)
      g.push_back(zc);
  return g;
}

// ---- numeric oracle for the model -----------------------------------------

struct OracleResult {
  double z = 0;
  double value = 0; // efficiency or COP at z
};

namespace detail {

inline double model_eta(Regime r, double z, double tau) {
  const HighTLedger l = high_T_ledger(r, z, tau);
  return l.w / l.q_h;
}

inline double model_cop(Regime r, double z, double tau) {
  const HighTLedger l = high_T_ledger(r, z, tau);
  return l.q_c / -l.w;
}

inline oracle::OptimumReport argmax(std::function<double(double)> f, Interval dom) {
  return oracle::maximize({std::move(f), dom.lo, dom.hi});
}

} // namespace detail

namespace detail {

/// Maximum of num/den over `dom`. When the best point sits on an end where
/// both vanish (the symmetric adiabatic cycle), the supremum is the limit of
/// the ratio there, taken as the ratio of slopes.
inline OracleResult ratio_max(const std::function<double(double)>& num,
                              const std::function<double(double)>& den, Interval dom) {
  const auto rep = argmax([&](double z) { return num(z) / den(z); }, dom);
  const double edge = 1e-6 * dom.width();
  for (double end : {dom.lo, dom.hi}) {
    if (std::abs(rep.x_star - end) < edge && std::abs(num(end)) < 1e-12 &&
        std::abs(den(end)) < 1e-12) {
      const double h = 1e-3 * dom.width();
      return {end, oracle::central_derivative(num, end, h) / oracle::central_derivative(den, end, h)};
    }
  }
  return {rep.x_star, rep.f_star};
}

} // namespace detail

inline OracleResult oracle_eta_max(Regime r, double tau) {
  return detail::ratio_max([&](double z) { return high_T_ledger(r, z, tau).w; },
                           [&](double z) { return high_T_ledger(r, z, tau).q_h; },
                           feasible_interval(Device::Engine, r, tau));
}

inline OracleResult oracle_eta_max_work(Regime r, double eta_c) {
  const double tau = 1.0 - eta_c;
  const auto rep = detail::argmax([&](double z) { return high_T_ledger(r, z, tau).w; },
                                  feasible_interval(Device::Engine, r, tau));
  return {rep.x_star, detail::model_eta(r, rep.x_star, tau)};
}

inline OracleResult oracle_eta_max_omega(Regime r, double eta_c) {
  const double tau = 1.0 - eta_c;
  const double em = oracle_eta_max(r, tau).value;
  const auto rep = detail::argmax(
      [&](double z) {
        const HighTLedger l = high_T_ledger(r, z, tau);
        return 2.0 * l.w - em * l.q_h;
      },
      feasible_interval(Device::Engine, r, tau));
  return {rep.x_star, detail::model_eta(r, rep.x_star, tau)};
}

inline OracleResult oracle_cop_max(Regime r, double zeta_c) {
  const double tau = zeta_c / (1.0 + zeta_c);
  return detail::ratio_max([&](double z) { return high_T_ledger(r, z, tau).q_c; },
                           [&](double z) { return -high_T_ledger(r, z, tau).w; },
                           feasible_interval(Device::Fridge, r, tau));
}

inline OracleResult oracle_cop_max_omega(Regime r, double zeta_c) {
  const double tau = zeta_c / (1.0 + zeta_c);
  const double cm = oracle_cop_max(r, zeta_c).value;
  const auto rep = detail::argmax(
      [&](double z) {
        const HighTLedger l = high_T_ledger(r, z, tau);
        return 2.0 * l.q_c + cm * l.w;
      },
      feasible_interval(Device::Fridge, r, tau));
  return {rep.x_star, detail::model_cop(r, rep.x_star, tau)};
}

// ---- checks ----------------------------------------------------------------

namespace detail {

inline Check deviation_check(std::string name, double tol, const std::vector<double>& grid,
                             const std::function<double(double)>& closed,
                             const std::function<double(double)>& numeric) {
  double worst = 0;
  for (double x : grid) {
    const double d = std::abs(closed(x) - numeric(x));
    worst = std::isfinite(d) ? std::max(worst, d) : std::numeric_limits<double>::infinity();
  }
  return {std::move(name), worst <= tol, worst, tol};
}

/// Passes when every consecutive pair of `chain(x)` is strictly decreasing.
inline Check ordering_check(std::string name, const std::vector<double>& grid,
                            const std::function<std::vector<double>(double)>& chain) {
  double margin = std::numeric_limits<double>::infinity();
  for (double x : grid) {
    const auto v = chain(x);
    for (std::size_t i = 1; i < v.size(); ++i)
      margin = std::min(margin, v[i - 1] - v[i]);
  }
  return {std::move(name), margin > 0.0, margin, 0.0};
}

inline std::string rname(Regime r) { return to_string(r); }

} // namespace detail

/// c1 from first differences at eta_c = 1e-3 and 1e-4, Richardson-extrapolated
/// to eta_c = 0 (removes the 2 c2 eta_c term).
inline double taylor_c1_estimate(Regime r) {
  const auto f = [r](double e) { return engine::eta_at_max_omega(r, e).value; };
  const double d3 = oracle::central_derivative(f, 1e-3, 5e-4);
  const double d4 = oracle::central_derivative(f, 1e-4, 5e-5);
  return (10.0 * d4 - d3) / 9.0;
}

/// c2 from the second difference at eta_c = 1e-3.
inline double taylor_c2_estimate(Regime r) {
  const auto f = [r](double e) { return engine::eta_at_max_omega(r, e).value; };
  return 0.5 * oracle::central_second_derivative(f, 1e-3, 5e-4);
}

/// Largest residual / (1 + |C|) over `count` random monic cubics with
/// coefficients in [-5, 5] that have three distinct real roots.
inline double cubic_residual_suite(int count, std::uint64_t seed = 20240611) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  double worst = 0;
  for (int done = 0; done < count;) {
    const auto m = cubic::MonicCubic::from(1.0, coef(rng), coef(rng), coef(rng));
    if (!(m.discriminant > 0.0))
      continue;
    for (double y : cubic::all_roots(m))
      worst = std::max(worst, std::abs(m(y)) / (1.0 + std::abs(m.C)));
    ++done;
  }
  return worst;
}

/// Relative disagreement of the coth ledger with the high-T forms when the
/// hot-side argument beta_h omega_h equals `x` (tau = 0.5, z = 0.8).
inline double high_T_consistency(double x) {
  const double z = 0.8, tau = 0.5;
  double worst = 0;
  for (Regime r : {Regime::SuddenCompression, Regime::SuddenExpansion}) {
    CycleConfig cfg;
    cfg.beta_h = 1.0;
    cfg.beta_c = 1.0 / tau;
    cfg.omega_h = x;
    cfg.omega_c = z * x;
    std::tie(cfg.compression, cfg.expansion) = stroke_protocols(r);
    const EnergyLedger l = energy_ledger(cfg);
    const EngineHeat h = high_T_engine_quantities(r, {z, tau});
    worst = std::max(worst, std::abs(l.q_h * cfg.beta_h - h.q_h) / std::abs(h.q_h));
    worst = std::max(worst, std::abs(l.w_net * cfg.beta_h - h.w) / std::abs(h.w));
  }
  return worst;
}

/// Ordering margins of a figure row; an empty result means nothing to compare.
inline std::vector<double> figure_row_margins(sweep::FigureId id, const sweep::Table& t,
                                              const std::vector<std::optional<double>>& row) {
  const auto v = [&](const char* col) { return row[t.column_index(col)]; };
  const auto chain = [](std::initializer_list<std::optional<double>> xs) {
    std::vector<double> out;
    std::optional<double> prev;
    for (const auto& x : xs) {
      if (!x)
        continue;
      if (prev)
        out.push_back(*prev - *x);
      prev = x;
    }
    return out;
  };
  std::vector<double> m;
  const auto append = [&](std::vector<double> more) { m.insert(m.end(), more.begin(), more.end()); };
  switch (id) {
  case sweep::FigureId::Fig2:
    append(chain({v("eta_omega_adi"), v("eta_omega_sc"), v("eta_omega_se"), v("eta_omega_ss")}));
    append(chain({v("eta_omega_sc"), v("eta_mw_sc")}));
    append(chain({v("eta_omega_se"), v("eta_mw_se")}));
    append(chain({v("delta_sc"), std::optional<double>(0.0)}));
    append(chain({v("delta_se"), std::optional<double>(0.0)}));
    break;
  case sweep::FigureId::Fig4:
    append(chain({v("r_omega_se"), v("r_omega_sc")}));
    append(chain({v("r_mw_se"), v("r_mw_sc")}));
    break;
  case sweep::FigureId::Fig6:
    append(chain({v("cop_omega_adi"), v("cop_omega_sc"), v("cop_omega_se"), v("cop_omega_ss")}));
    break;
  }
  return m;
}

inline std::vector<Check> run_all(const Tolerances& tol = {}) {
  using R = Regime;
  std::vector<Check> out;
  const auto eg = engine_grid();

  for (R r : {R::SuddenCompression, R::SuddenExpansion, R::Adiabatic, R::SuddenSwitch})
    out.push_back(detail::deviation_check(
        "engine " + detail::rname(r) + ": eta at max Omega vs oracle", tol.omega, eg,
        [r](double e) { return engine::eta_at_max_omega(r, e).value; },
        [r](double e) { return oracle_eta_max_omega(r, e).value; }));
  for (R r : {R::SuddenCompression, R::SuddenExpansion}) {
    out.push_back(detail::deviation_check(
        "engine " + detail::rname(r) + ": eta at max work vs oracle", tol.max_work, eg,
        [r](double e) { return engine::eta_max_work(r, e); },
        [r](double e) { return oracle_eta_max_work(r, e).value; }));
    out.push_back(detail::deviation_check(
        "engine " + detail::rname(r) + ": eta_max vs oracle", tol.maximum, eg,
        [r](double e) { return engine::eta_max(r, 1.0 - e).value; },
        [r](double e) { return oracle_eta_max(r, 1.0 - e).value; }));
    const char* sym = r == R::SuddenCompression ? "K" : "C";
    out.push_back(detail::deviation_check(
        "engine " + detail::rname(r) + ": z* at max Omega equals trace " + sym, 1e-9, eg,
        [r](double e) { return engine::z_star_max_omega(r, 1.0 - e).value; },
        [r, sym](double e) { return engine::eta_at_max_omega(r, e).trace.at(sym); }));
    out.push_back(detail::deviation_check(
        "engine " + detail::rname(r) + ": trace " + sym + " equals oracle argmax of Omega",
        tol.omega, eg, [r, sym](double e) { return engine::eta_at_max_omega(r, e).trace.at(sym); },
        [r](double e) { return oracle_eta_max_omega(r, e).z; }));
  }

  for (R r : {R::SuddenCompression, R::SuddenExpansion, R::Adiabatic, R::SuddenSwitch})
    out.push_back(detail::deviation_check(
        "fridge " + detail::rname(r) + ": COP at max Omega vs oracle", tol.omega, fridge_grid(r),
        [r](double zc) { return fridge::cop_at_max_omega(r, zc).value; },
        [r](double zc) { return oracle_cop_max_omega(r, zc).value; }));
  for (R r : {R::SuddenCompression, R::SuddenExpansion})
    out.push_back(detail::deviation_check(
        "fridge " + detail::rname(r) + ": cop_max vs oracle", tol.maximum, fridge_grid(r),
        [r](double zc) { return fridge::cop_max(r, zc).value; },
        [r](double zc) { return oracle_cop_max(r, zc).value; }));

  for (R r : {R::SuddenCompression, R::SuddenExpansion}) {
    out.push_back(detail::ordering_check(
        "engine " + detail::rname(r) + ": eta_c > eta_max > eta_Omega > eta_MW", eg, [r](double e) {
          return std::vector{e, engine::eta_max(r, 1.0 - e).value,
                             engine::eta_at_max_omega(r, e).value, engine::eta_max_work(r, e)};
        }));
    out.push_back(detail::ordering_check(
        "fridge " + detail::rname(r) + ": zeta_c > zeta_max > zeta_Omega", fridge_grid(r),
        [r](double zc) {
          return std::vector{zc, fridge::cop_max(r, zc).value,
                             fridge::cop_at_max_omega(r, zc).value};
        }));
  }
  out.push_back(detail::ordering_check("engine: eta_Omega adi > sc > se > ss", eg, [](double e) {
    std::vector<double> v;
    for (R r : {R::Adiabatic, R::SuddenCompression, R::SuddenExpansion, R::SuddenSwitch})
      v.push_back(engine::eta_at_max_omega(r, e).value);
    return v;
  }));
  out.push_back(detail::ordering_check("fridge: zeta_Omega adi > sc > se > ss",
                                       fridge_grid(R::SuddenSwitch), [](double zc) {
                                         std::vector<double> v;
                                         for (R r : {R::Adiabatic, R::SuddenCompression,
                                                     R::SuddenExpansion, R::SuddenSwitch})
                                           v.push_back(fridge::cop_at_max_omega(r, zc).value);
                                         return v;
                                       }));
  out.push_back(detail::ordering_check("fridge sc: zeta_Omega increasing in zeta_c", {0.0},
                                       [](double) {
                                         auto g = fridge_grid();
                                         std::vector<double> v;
                                         for (auto it = g.rbegin(); it != g.rend(); ++it)
                                           v.push_back(fridge::cop_at_max_omega(
                                                           R::SuddenCompression, *it).value);
                                         return v;
                                       }));
  out.push_back(detail::ordering_check("fractional loss: R_se > R_sc at max work", eg, [](double e) {
    return std::vector{engine::fractional_loss_max_work(R::SuddenExpansion, e),
                       engine::fractional_loss_max_work(R::SuddenCompression, e)};
  }));
  out.push_back(detail::ordering_check("fractional loss: R_se > R_sc at max Omega", eg, [](double e) {
    return std::vector{
        engine::fractional_loss(engine::eta_at_max_omega(R::SuddenExpansion, e).value, e),
        engine::fractional_loss(engine::eta_at_max_omega(R::SuddenCompression, e).value, e)};
  }));

  for (R r : {R::SuddenCompression, R::SuddenExpansion}) {
    const auto tc = engine::taylor_coeffs(r);
    const double d1 = std::abs(taylor_c1_estimate(r) - tc.c1);
    const double d2 = std::abs(taylor_c2_estimate(r) - tc.c2);
    out.push_back({"taylor " + detail::rname(r) + ": c1 from finite differences", d1 <= 1e-4, d1, 1e-4});
    out.push_back({"taylor " + detail::rname(r) + ": c2 from second differences", d2 <= 1e-2, d2, 1e-2});
  }

  {
    const double worst = cubic_residual_suite(10000);
    out.push_back({"cubic: residuals of 10^4 random trig-regime cubics", worst <= 1e-10, worst, 1e-10});
  }
  {
    double worst = 0;
    for (double t = 0.05; t < 0.951; t += 0.05) {
      const double dsc = cubic::discriminant(2.0 - t, 0.0, -3.0 * t, 2.0 * t * t);
      const double esc = 108.0 * t * t * t * (2.0 - t) * (1.0 - t) * (1.0 - t);
      const double dse = cubic::discriminant(2.0, -3.0 * t, 0.0, t * (2.0 * t - 1.0));
      const double ese = 108.0 * t * t * (2.0 * t - 1.0) * (1.0 - t) * (1.0 - t);
      worst = std::max(worst, std::abs(dsc - esc) / std::abs(esc));
      worst = std::max(worst, std::abs(dse - ese) / std::max(std::abs(ese), 1e-300));
    }
    out.push_back({"cubic: discriminants match closed forms (relative)", worst <= 1e-9, worst, 1e-9});
  }
  {
    // k = 2 root of the engine cubic is the fridge optimum; k = 0 is not feasible.
    double margin = std::numeric_limits<double>::infinity();
    double agree = 0;
    for (R r : {R::SuddenCompression, R::SuddenExpansion}) {
      for (double zc : fridge_grid(r)) {
        const double t = zc / (1.0 + zc);
        const auto m = r == R::SuddenCompression
                           ? cubic::MonicCubic::from(2.0 - t, 0.0, -3.0 * t, 2.0 * t * t)
                           : cubic::MonicCubic::from(2.0, -3.0 * t, 0.0, t * (2.0 * t - 1.0));
        const Interval dom = feasible_interval(Device::Fridge, r, t);
        const double k2 = cubic::trig_root(m, cubic::TrigBranch(2));
        const double k0 = cubic::trig_root(m, cubic::TrigBranch(0));
        margin = std::min(margin, std::min(k2 - dom.lo, dom.hi - k2));
        margin = std::min(margin, std::max(dom.lo - k0, k0 - dom.hi));
        agree = std::max(agree, std::abs(k2 - fridge::z_star_max_cop(r, zc).value));
      }
    }
    out.push_back({"fridge: branch k=2 feasible, k=0 infeasible", margin > 0.0, margin, 0.0});
    out.push_back({"fridge: z* closed form equals k=2 cubic root", agree <= 1e-10, agree, 1e-10});
  }
  {
    const double e2 = high_T_consistency(0.01);
    const double e3 = high_T_consistency(0.001);
    out.push_back({"cycle: coth ledger vs high-T at beta_h*omega_h=0.01", e2 <= 1e-2, e2, 1e-2});
    out.push_back({"cycle: coth ledger vs high-T at beta_h*omega_h=0.001", e3 <= 1e-4, e3, 1e-4});
  }
  for (auto id : {sweep::FigureId::Fig2, sweep::FigureId::Fig4, sweep::FigureId::Fig6}) {
    const sweep::Table t = sweep::run_figure(id);
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, t.rows.size() - 1);
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 20; ++i)
      for (double m : figure_row_margins(id, t, t.rows[pick(rng)]))
        margin = std::min(margin, m);
    const char* names[] = {"fig2", "fig4", "fig6"};
    out.push_back({std::string(names[static_cast<int>(id)]) + ": 20 random rows satisfy orderings",
                   margin > 0.0, margin, 0.0});
  }
  return out;
}

} // namespace otto::verify

#endif
