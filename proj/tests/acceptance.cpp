// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "otto/cubic.hpp"
#include "otto/engine.hpp"
#include "otto/fridge.hpp"
#include "otto/sweep.hpp"
#include "otto/verification.hpp"

#ifndef OTTO_LAB_PATH
#error "OTTO_LAB_PATH must name the otto-lab executable"
#endif

namespace {

using namespace otto;
using Clock = std::chrono::steady_clock;
constexpr Regime SC = Regime::SuddenCompression;
constexpr Regime SE = Regime::SuddenExpansion;
constexpr Regime ADI = Regime::Adiabatic;
constexpr Regime SS = Regime::SuddenSwitch;

struct Criterion {
  std::string id;
  std::string title;
  std::vector<std::string> details;
  bool passed = true;

  void expect(bool ok, const std::string& what) {
    details.push_back(std::string(ok ? "ok    " : "FAILED") + "  " + what);
    passed = passed && ok;
  }
  void expect(const verify::Check& c) {
    std::ostringstream os;
    os << c.name << " (worst " << sweep::format_number(c.worst);
    if (c.tolerance > 0)
      os << ", tol " << sweep::format_number(c.tolerance);
    os << ")";
    expect(c.passed, os.str());
  }
};

std::string num(double x) { return sweep::format_number(x); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Run {
  int status = -1;
  std::string out;
  double seconds = 0;
};

Run run_lab(const std::string& args) {
  const std::string cmd = std::string("'") + OTTO_LAB_PATH + "' " + args + " 2>/dev/null";
  Run r;
  const auto t0 = Clock::now();
  FILE* p = popen(cmd.c_str(), "r");
  if (!p)
    return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0)
    r.out.append(buf, n);
  const int st = pclose(p);
  r.seconds = seconds_since(t0);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

/// Parses otto-lab CSV back into a table; empty fields become nullopt.
sweep::Table parse_csv(const std::string& text) {
  sweep::Table t;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ','))
      cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
      cells.emplace_back();
    if (header) {
      t.header = cells;
      header = false;
      continue;
    }
    std::vector<std::optional<double>> row;
    for (const auto& c : cells)
      row.push_back(c.empty() ? std::nullopt : std::optional<double>(std::stod(c)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct Spot {
  const char* label;
  double expected;
  std::function<double()> closed;
  std::function<double()> numeric;
};

std::vector<Spot> spot_values() {
  using namespace otto::verify;
  return {
      {"eta_SC^Omega(0.5)", 0.1780, [] { return engine::eta_at_max_omega(SC, 0.5).value; },
       [] { return oracle_eta_max_omega(SC, 0.5).value; }},
      {"eta_SE^Omega(0.5)", 0.1541, [] { return engine::eta_at_max_omega(SE, 0.5).value; },
       [] { return oracle_eta_max_omega(SE, 0.5).value; }},
      {"eta_SC^MW(0.5)", 0.1683, [] { return engine::eta_max_work(SC, 0.5); },
       [] { return oracle_eta_max_work(SC, 0.5).value; }},
      {"eta_SE^MW(0.5)", 0.1488, [] { return engine::eta_max_work(SE, 0.5); },
       [] { return oracle_eta_max_work(SE, 0.5).value; }},
      {"eta_Adi^Omega(0.5)", 0.3876, [] { return engine::eta_at_max_omega(ADI, 0.5).value; },
       [] { return oracle_eta_max_omega(ADI, 0.5).value; }},
      {"eta_SS^Omega(0.5)", 0.0593, [] { return engine::eta_at_max_omega(SS, 0.5).value; },
       [] { return oracle_eta_max_omega(SS, 0.5).value; }},
      {"zeta_SC^max(1)", 0.1405, [] { return fridge::cop_max(SC, 1.0).value; },
       [] { return oracle_cop_max(SC, 1.0).value; }},
      {"zeta_SC^Omega(1)", 0.1192, [] { return fridge::cop_at_max_omega(SC, 1.0).value; },
       [] { return oracle_cop_max_omega(SC, 1.0).value; }},
      {"zeta_SE^max(3)", 0.3892, [] { return fridge::cop_max(SE, 3.0).value; },
       [] { return oracle_cop_max(SE, 3.0).value; }},
      {"zeta_SE^Omega(3)", 0.3300, [] { return fridge::cop_at_max_omega(SE, 3.0).value; },
       [] { return oracle_cop_max_omega(SE, 3.0).value; }},
      {"zeta_Adi^Omega(1)", 0.6899, [] { return fridge::cop_at_max_omega(ADI, 1.0).value; },
       [] { return oracle_cop_max_omega(ADI, 1.0).value; }},
      {"zeta_SS^Omega(3)", 0.1733, [] { return fridge::cop_at_max_omega(SS, 3.0).value; },
       [] { return oracle_cop_max_omega(SS, 3.0).value; }},
  };
}

constexpr double spot_tol = 2e-4;

Criterion criterion1() {
  Criterion c{"1", "engine closed forms vs oracle"};
  const auto t0 = Clock::now();
  const verify::Tolerances tol;
  const auto grid = verify::engine_grid();
  std::vector<verify::Check> checks;
  for (Regime r : {SC, SE}) {
    const std::string n = to_string(r);
    checks.push_back(verify::detail::deviation_check(
        "eta^Omega " + n, tol.omega, grid, [r](double e) { return engine::eta_at_max_omega(r, e).value; },
        [r](double e) { return verify::oracle_eta_max_omega(r, e).value; }));
    checks.push_back(verify::detail::deviation_check(
        "eta^MW " + n, tol.max_work, grid, [r](double e) { return engine::eta_max_work(r, e); },
        [r](double e) { return verify::oracle_eta_max_work(r, e).value; }));
    checks.push_back(verify::detail::deviation_check(
        "eta_max " + n, tol.maximum, grid, [r](double e) { return engine::eta_max(r, 1.0 - e).value; },
        [r](double e) { return verify::oracle_eta_max(r, 1.0 - e).value; }));
  }
  const double secs = seconds_since(t0);
  for (const auto& k : checks)
    c.expect(k);
  c.expect(secs <= 2.0, "runtime " + num(secs) + " s <= 2 s");
  return c;
}

Criterion criterion2() {
  Criterion c{"2", "fridge closed forms vs oracle"};
  const verify::Tolerances tol;
  for (Regime r : {SC, SE}) {
    const std::string n = to_string(r);
    const auto grid = verify::fridge_grid(r);
    c.expect(verify::detail::deviation_check(
        "zeta^Omega " + n, tol.omega, grid, [r](double z) { return fridge::cop_at_max_omega(r, z).value; },
        [r](double z) { return verify::oracle_cop_max_omega(r, z).value; }));
    c.expect(verify::detail::deviation_check(
        "zeta_max " + n, tol.maximum, grid, [r](double z) { return fridge::cop_max(r, z).value; },
        [r](double z) { return verify::oracle_cop_max(r, z).value; }));
  }
  return c;
}

Criterion criterion3() {
  Criterion c{"3", "spot values within 2e-4"};
  for (const auto& s : spot_values()) {
    const double a = s.closed(), b = s.numeric();
    const bool ok = std::abs(a - s.expected) <= spot_tol && std::abs(b - s.expected) <= spot_tol;
    c.expect(ok, std::string(s.label) + " expected " + num(s.expected) + ", closed form " + num(a) +
                     ", oracle " + num(b));
  }
  return c;
}

Criterion criterion4() {
  Criterion c{"4", "near-Carnot limits"};
  const double sc = engine::eta_at_max_omega(SC, 0.9999).value;
  const double se = engine::eta_at_max_omega(SE, 0.9999).value;
  const double mw = engine::eta_max_work(SE, engine::eta_c_max);
  c.expect(sc >= 0.99, "eta_SC^Omega(0.9999) = " + num(sc) + " >= 0.99");
  c.expect(std::abs(se - 0.5) <= 0.01, "eta_SE^Omega(0.9999) = " + num(se) + " within 0.01 of 0.5");
  c.expect(std::abs(mw - 0.5) <= 0.01,
           "eta_SE^MW(1 - 1e-6) = " + num(mw) + " within 0.01 of 0.5");
  return c;
}

Criterion criterion5() {
  Criterion c{"5", "Taylor coefficients from finite differences"};
  const double c1 = 11.0 * std::sqrt(3.0) / 4.0 - 4.5;
  const double c2_sc = (8339.0 - 4804.0 * std::sqrt(3.0)) / 144.0;
  const double c2_se = (1414.0 - 815.0 * std::sqrt(3.0)) / 36.0;
  for (Regime r : {SC, SE}) {
    const double e1 = verify::taylor_c1_estimate(r);
    const double e2 = verify::taylor_c2_estimate(r);
    const double want2 = r == SC ? c2_sc : c2_se;
    c.expect(std::abs(e1 - c1) <= 1e-4,
             std::string("c1 ") + to_string(r) + " = " + num(e1) + " vs " + num(c1));
    c.expect(std::abs(e2 - want2) <= 1e-2,
             std::string("c2 ") + to_string(r) + " = " + num(e2) + " vs " + num(want2));
  }
  return c;
}

Criterion criterion6() {
  Criterion c{"6", "orderings on full grids"};
  const auto eg = verify::engine_grid();
  using verify::detail::ordering_check;
  c.expect(ordering_check("eta^Omega adi > sc > se > ss", eg, [](double e) {
    return std::vector{engine::eta_at_max_omega(ADI, e).value, engine::eta_at_max_omega(SC, e).value,
                       engine::eta_at_max_omega(SE, e).value, engine::eta_at_max_omega(SS, e).value};
  }));
  c.expect(ordering_check("zeta^Omega adi > sc > se > ss", verify::fridge_grid(SS), [](double z) {
    return std::vector{fridge::cop_at_max_omega(ADI, z).value, fridge::cop_at_max_omega(SC, z).value,
                       fridge::cop_at_max_omega(SE, z).value, fridge::cop_at_max_omega(SS, z).value};
  }));
  for (Regime r : {SC, SE}) {
    const std::string n = to_string(r);
    c.expect(ordering_check("eta_c > eta_max > eta^Omega > eta^MW " + n, eg, [r](double e) {
      return std::vector{e, engine::eta_max(r, 1.0 - e).value, engine::eta_at_max_omega(r, e).value,
                         engine::eta_max_work(r, e)};
    }));
    c.expect(ordering_check("zeta_c > zeta_max > zeta^Omega " + n, verify::fridge_grid(r),
                            [r](double z) {
                              return std::vector{z, fridge::cop_max(r, z).value,
                                                 fridge::cop_at_max_omega(r, z).value};
                            }));
  }
  c.expect(ordering_check("R_se > R_sc at max work", eg, [](double e) {
    return std::vector{engine::fractional_loss_max_work(SE, e), engine::fractional_loss_max_work(SC, e)};
  }));
  c.expect(ordering_check("R_se > R_sc at max Omega", eg, [](double e) {
    return std::vector{engine::fractional_loss(engine::eta_at_max_omega(SE, e).value, e),
                       engine::fractional_loss(engine::eta_at_max_omega(SC, e).value, e)};
  }));
  return c;
}

Criterion criterion7() {
  Criterion c{"7", "cubic solver"};
  const double worst = verify::cubic_residual_suite(10000);
  c.expect(worst <= 1e-10, "10^4 random cubics, worst residual/(1+|C|) = " + num(worst));
  const double root = cubic::trig_root(cubic::MonicCubic::from(2.0 - 1.0, 0.0, -3.0, 2.0),
                                       cubic::TrigBranch(0));
  c.expect(std::abs(root - 1.0) <= 1e-12, "sudden-compression cubic at tau = 1, root " + num(root));
  double rel = 0;
  for (double t = 0.05; t < 0.951; t += 0.05) {
    const double dsc = cubic::discriminant(2.0 - t, 0.0, -3.0 * t, 2.0 * t * t);
    const double dse = cubic::discriminant(2.0, -3.0 * t, 0.0, t * (2.0 * t - 1.0));
    const double esc = 108.0 * t * t * t * (2.0 - t) * (1.0 - t) * (1.0 - t);
    const double ese = 108.0 * t * t * (2.0 * t - 1.0) * (1.0 - t) * (1.0 - t);
    rel = std::max(rel, std::abs(dsc - esc) / std::abs(esc));
    if (ese != 0.0)
      rel = std::max(rel, std::abs(dse - ese) / std::abs(ese));
  }
  c.expect(rel <= 1e-9, "discriminants vs closed forms, worst relative " + num(rel));
  return c;
}

Criterion criterion8() {
  Criterion c{"8", "coth ledger vs high-T forms"};
  const double a = verify::high_T_consistency(0.01);
  const double b = verify::high_T_consistency(0.001);
  c.expect(a <= 1e-2, "beta_h omega_h = 0.01: relative " + num(a) + " <= 1e-2");
  c.expect(b <= 1e-4, "beta_h omega_h = 0.001: relative " + num(b) + " <= 1e-4");
  return c;
}

std::optional<double> row_value(const sweep::Table& t, double x, const char* col) {
  for (const auto& row : t.rows)
    if (row[0] && std::abs(*row[0] - x) < 1e-12)
      return row[t.column_index(col)];
  return std::nullopt;
}

Criterion criterion9() {
  Criterion c{"9", "otto-lab end to end"};
  const Run v = run_lab("verify");
  c.expect(v.status == 0, "verify exit status " + std::to_string(v.status));
  c.expect(v.seconds < 10.0, "verify runtime " + num(v.seconds) + " s < 10 s");

  std::vector<sweep::Table> tables;
  for (const char* id : {"fig2", "fig4", "fig6"}) {
    const Run a = run_lab(std::string("figure --id ") + id);
    const Run b = run_lab(std::string("figure --id ") + id);
    c.expect(a.status == 0 && a.out == b.out && !a.out.empty(),
             std::string(id) + " byte-identical across runs");
    tables.push_back(parse_csv(a.out));
  }
  const auto& fig2 = tables[0];
  const auto& fig4 = tables[1];
  const auto& fig6 = tables[2];

  // criterion 3 on the rows that carry spot values
  const struct {
    const sweep::Table* t;
    double x;
    const char* col;
    double expected;
  } spots[] = {
      {&fig2, 0.5, "eta_omega_sc", 0.1780},  {&fig2, 0.5, "eta_omega_se", 0.1541},
      {&fig2, 0.5, "eta_mw_sc", 0.1683},     {&fig2, 0.5, "eta_mw_se", 0.1488},
      {&fig2, 0.5, "eta_omega_adi", 0.3876}, {&fig2, 0.5, "eta_omega_ss", 0.0593},
      {&fig6, 1.0, "cop_omega_sc", 0.1192},  {&fig6, 3.0, "cop_omega_se", 0.3300},
      {&fig6, 1.0, "cop_omega_adi", 0.6899}, {&fig6, 3.0, "cop_omega_ss", 0.1733},
  };
  bool spots_ok = true;
  std::string bad;
  for (const auto& s : spots) {
    const auto v = row_value(*s.t, s.x, s.col);
    if (!v || std::abs(*v - s.expected) > spot_tol) {
      spots_ok = false;
      bad += std::string(" ") + s.col + "(" + num(s.x) + ")=" + (v ? num(*v) : "missing");
    }
  }
  c.expect(spots_ok, "figure rows match criterion 3 spot values" + (bad.empty() ? "" : ":" + bad));

  // criterion 6 on every row
  double margin = std::numeric_limits<double>::infinity();
  const sweep::FigureId ids[] = {sweep::FigureId::Fig2, sweep::FigureId::Fig4, sweep::FigureId::Fig6};
  for (int i = 0; i < 3; ++i)
    for (const auto& row : tables[i].rows)
      for (double m : verify::figure_row_margins(ids[i], tables[i], row))
        margin = std::min(margin, m);
  c.expect(margin > 0.0, "every figure row satisfies the orderings (smallest margin " + num(margin) + ")");
  const auto r_se = row_value(fig4, 0.5, "r_mw_se"), r_sc = row_value(fig4, 0.5, "r_mw_sc");
  c.expect(r_se && r_sc && *r_se > *r_sc, "fig4 R_se^MW > R_sc^MW at eta_c = 0.5");

  // criterion 4 on the figure grid: the curves rise toward their limits and
  // the sudden-expansion ones stay at or below one half.
  bool rising = true;
  double se_peak = 0;
  for (const char* col : {"eta_omega_sc", "eta_omega_se", "eta_mw_sc", "eta_mw_se"}) {
    const std::size_t k = fig2.column_index(col);
    for (std::size_t i = 1; i < fig2.rows.size(); ++i)
      rising = rising && *fig2.rows[i][k] > *fig2.rows[i - 1][k];
  }
  for (const char* col : {"eta_omega_se", "eta_mw_se"})
    se_peak = std::max(se_peak, *fig2.rows.back()[fig2.column_index(col)]);
  c.expect(rising && se_peak <= 0.5 + 0.01,
           "fig2 efficiencies increase with eta_c; sudden-expansion curves end at " + num(se_peak) +
               " <= 0.51");
  return c;
}

} // namespace

int main() {
  const std::vector<std::function<Criterion()>> all = {criterion1, criterion2, criterion3,
                                                       criterion4, criterion5, criterion6,
                                                       criterion7, criterion8, criterion9};
  int failed = 0;
  for (const auto& f : all) {
    const Criterion c = f();
    std::printf("criterion %s: %s  %s\n", c.id.c_str(), c.passed ? "PASS" : "FAIL", c.title.c_str());
    for (const auto& d : c.details)
      std::printf("    %s\n", d.c_str());
    failed += c.passed ? 0 : 1;
  }
  std::printf("%zu criteria, %d failed\n", all.size(), failed);
  return failed ? 1 : 0;
}
