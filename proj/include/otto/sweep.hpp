#ifndef OTTO_SWEEP_HPP
#define OTTO_SWEEP_HPP

// Grid sweeps over eta_c or zeta_c written as CSV: header row, one row per
// grid point, empty cells where a quantity is undefined or out of domain.

#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "otto/cycle.hpp"
#include "otto/engine.hpp"
#include "otto/error.hpp"
#include "otto/fridge.hpp"

namespace otto::sweep {

enum class Axis { EtaC, ZetaC };

enum class Quantity { EtaOmega, EtaMw, EtaMax, CopOmega, CopMax, ROmega, RMw, Delta };

enum class FigureId { Fig2, Fig4, Fig6 };

/// Bad command-line level input (unknown names, inconsistent spec).
class usage_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr const char* to_string(Axis a) noexcept {
  return a == Axis::EtaC ? "eta_c" : "zeta_c";
}

inline constexpr const char* to_string(Quantity q) noexcept {
  switch (q) {
  case Quantity::EtaOmega: return "eta_omega";
  case Quantity::EtaMw: return "eta_mw";
  case Quantity::EtaMax: return "eta_max";
  case Quantity::CopOmega: return "cop_omega";
  case Quantity::CopMax: return "cop_max";
  case Quantity::ROmega: return "r_omega";
  case Quantity::RMw: return "r_mw";
  case Quantity::Delta: return "delta";
  }
  return "?";
}

inline Device parse_device(std::string_view s) {
  if (s == "engine") return Device::Engine;
  if (s == "fridge") return Device::Fridge;
  throw usage_error("unknown device '" + std::string(s) + "' (engine|fridge)");
}

inline Regime parse_regime(std::string_view s) {
  if (s == "sc") return Regime::SuddenCompression;
  if (s == "se") return Regime::SuddenExpansion;
  if (s == "adi") return Regime::Adiabatic;
  if (s == "ss") return Regime::SuddenSwitch;
  throw usage_error("unknown regime '" + std::string(s) + "' (sc|se|adi|ss)");
}

inline Axis parse_axis(std::string_view s) {
  if (s == "eta_c") return Axis::EtaC;
  if (s == "zeta_c") return Axis::ZetaC;
  throw usage_error("unknown axis '" + std::string(s) + "' (eta_c|zeta_c)");
}

inline Quantity parse_quantity(std::string_view s) {
  for (auto q : {Quantity::EtaOmega, Quantity::EtaMw, Quantity::EtaMax, Quantity::CopOmega,
                 Quantity::CopMax, Quantity::ROmega, Quantity::RMw, Quantity::Delta})
    if (s == to_string(q))
      return q;
  throw usage_error("unknown quantity '" + std::string(s) + "'");
}

inline FigureId parse_figure(std::string_view s) {
  if (s == "fig2") return FigureId::Fig2;
  if (s == "fig4") return FigureId::Fig4;
  if (s == "fig6") return FigureId::Fig6;
  throw usage_error("unknown figure id '" + std::string(s) + "' (fig2|fig4|fig6)");
}

inline bool is_fridge_quantity(Quantity q) noexcept {
  return q == Quantity::CopOmega || q == Quantity::CopMax;
}

/// One quantity of one regime at one axis value, or nothing when the
/// quantity is undefined there.
inline std::optional<double> evaluate(Regime r, Quantity q, double x) {
  try {
    switch (q) {
    case Quantity::EtaOmega: return engine::eta_at_max_omega(r, x).value;
    case Quantity::EtaMw:
      if (!is_asymmetric(r)) return std::nullopt;
      return engine::eta_max_work(r, x);
    case Quantity::EtaMax:
      if (!is_asymmetric(r)) return std::nullopt;
      engine::detail::require_eta_c(x);
      return engine::eta_max(r, 1.0 - x).value;
    case Quantity::CopOmega: return fridge::cop_at_max_omega(r, x).value;
    case Quantity::CopMax:
      if (!is_asymmetric(r)) return std::nullopt;
      return fridge::cop_max(r, x).value;
    case Quantity::ROmega: return engine::fractional_loss(engine::eta_at_max_omega(r, x).value, x);
    case Quantity::RMw:
      if (!is_asymmetric(r)) return std::nullopt;
      return engine::fractional_loss_max_work(r, x);
    case Quantity::Delta:
      if (!is_asymmetric(r)) return std::nullopt;
      return engine::eta_at_max_omega(r, x).value - engine::eta_max_work(r, x);
    }
  } catch (const otto::domain_error&) {
  }
  return std::nullopt;
}

struct Column {
  Regime regime;
  Quantity quantity;

  std::string name() const { return std::string(to_string(quantity)) + "_" + to_string(regime); }
};

struct SweepSpec {
  Device device = Device::Engine;
  std::vector<Regime> regimes;
  Axis axis = Axis::EtaC;
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;
  std::vector<Quantity> quantities;

  void validate() const {
    if (regimes.empty())
      throw usage_error("at least one regime is required");
    if (quantities.empty())
      throw usage_error("at least one quantity is required");
    if (steps < 2)
      throw usage_error("steps must be >= 2");
    if (!(start < stop))
      throw usage_error("start must be < stop");
    const Axis want = device == Device::Engine ? Axis::EtaC : Axis::ZetaC;
    if (axis != want)
      throw usage_error(std::string("device ") + otto::to_string(device) + " sweeps axis " +
                        to_string(want));
    for (Quantity q : quantities)
      if (is_fridge_quantity(q) != (device == Device::Fridge))
        throw usage_error(std::string("quantity ") + to_string(q) + " does not apply to " +
                          otto::to_string(device));
    if (axis == Axis::EtaC && !(start >= engine::eta_c_min && stop <= engine::eta_c_max))
      throw usage_error("eta_c grid must lie within [1e-6, 1 - 1e-6]");
    if (axis == Axis::ZetaC && !(start > 0.0 && std::isfinite(stop)))
      throw usage_error("zeta_c grid must be positive");
  }

  std::vector<Column> columns() const {
    std::vector<Column> cols;
    for (Quantity q : quantities)
      for (Regime r : regimes)
        cols.push_back({r, q});
    return cols;
  }

  double grid(int i) const {
    if (i == steps - 1)
      return stop;
    return start + (stop - start) * static_cast<double>(i) / (steps - 1);
  }
};

/// Locale-independent %.12g.
inline std::string format_number(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;

  std::size_t column_index(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name)
        return i;
    throw std::out_of_range("no column " + std::string(name));
  }
};

inline Table tabulate(Axis axis, const std::vector<Column>& cols, int steps,
                      const auto& grid_at) {
  Table t;
  t.header.emplace_back(to_string(axis));
  for (const auto& c : cols)
    t.header.push_back(c.name());
  for (int i = 0; i < steps; ++i) {
    const double x = grid_at(i);
    std::vector<std::optional<double>> row{x};
    for (const auto& c : cols)
      row.push_back(evaluate(c.regime, c.quantity, x));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table run_sweep(const SweepSpec& spec) {
  spec.validate();
  return tabulate(spec.axis, spec.columns(), spec.steps, [&](int i) { return spec.grid(i); });
}

/// Default grid size; the notable points 0.5 (eta_c) and 1, 3 (zeta_c) are grid points.
inline constexpr int default_figure_steps = 181;

inline SweepSpec figure_spec(FigureId id, int steps) {
  if (steps < 50)
    throw usage_error("figure steps must be >= 50");
  SweepSpec s;
  s.steps = steps;
  switch (id) {
  case FigureId::Fig2:
  case FigureId::Fig4:
    s.device = Device::Engine;
    s.axis = Axis::EtaC;
    s.start = 0.005;
    s.stop = 0.995;
    break;
  case FigureId::Fig6:
    s.device = Device::Fridge;
    s.axis = Axis::ZetaC;
    s.start = 0.05;
    s.stop = 9.05;
    break;
  }
  return s;
}

inline std::vector<Column> figure_columns(FigureId id) {
  using R = Regime;
  using Q = Quantity;
  switch (id) {
  case FigureId::Fig2:
    return {{R::SuddenCompression, Q::EtaOmega}, {R::SuddenExpansion, Q::EtaOmega},
            {R::SuddenCompression, Q::EtaMw},    {R::SuddenExpansion, Q::EtaMw},
            {R::Adiabatic, Q::EtaOmega},         {R::SuddenSwitch, Q::EtaOmega},
            {R::SuddenCompression, Q::Delta},    {R::SuddenExpansion, Q::Delta}};
  case FigureId::Fig4:
    return {{R::SuddenCompression, Q::ROmega},
            {R::SuddenExpansion, Q::ROmega},
            {R::SuddenCompression, Q::RMw},
            {R::SuddenExpansion, Q::RMw}};
  case FigureId::Fig6:
    return {{R::SuddenCompression, Q::CopOmega},
            {R::SuddenExpansion, Q::CopOmega},
            {R::Adiabatic, Q::CopOmega},
            {R::SuddenSwitch, Q::CopOmega}};
  }
  return {};
}

inline Table run_figure(FigureId id, int steps = default_figure_steps) {
  const SweepSpec s = figure_spec(id, steps);
  return tabulate(s.axis, figure_columns(id), s.steps, [&](int i) { return s.grid(i); });
}

/// Comma separated, LF line endings, empty field for missing values.
inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i)
    os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i)
        os << ',';
      if (row[i])
        os << format_number(*row[i]);
    }
    os << '\n';
  }
}

} // namespace otto::sweep

#endif
