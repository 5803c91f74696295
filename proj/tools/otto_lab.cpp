// otto-lab: sweeps, figure data, single-point queries and the closed-form vs
// oracle verification run for the asymmetric harmonic Otto engine/refrigerator.
//
// Exit codes: 0 success, 1 usage error, 2 domain error, 3 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "otto/cycle.hpp"
#include "otto/engine.hpp"
#include "otto/error.hpp"
#include "otto/fridge.hpp"
#include "otto/sweep.hpp"
#include "otto/verification.hpp"

namespace {

enum Exit : int { ok = 0, usage = 1, domain = 2, verification = 3 };

using nlohmann::json;
using otto::Device;
using otto::Regime;
namespace sweep = otto::sweep;

struct Output {
  std::string path;

  template <class F>
  int with_stream(F&& write) const {
    if (path.empty()) {
      write(std::cout);
      return std::cout ? ok : domain;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      std::cerr << "otto-lab: cannot open " << path << " for writing\n";
      return usage;
    }
    write(f);
    return ok;
  }
};

// Symbols only; z_star and eta_max already appear as z_star_* / eta_max keys.
void put_trace(json& j, const otto::Trace& t) {
  for (const auto& [name, value] : t) {
    if (name == "z_star" || name == "eta_max")
      continue;
    std::string key = "trace_";
    for (char c : name)
      key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    j[key] = value;
  }
}

json engine_point(Regime r, double eta_c, std::optional<double> z) {
  namespace eng = otto::engine;
  const double tau = 1.0 - eta_c;
  json j;
  j["device"] = "engine";
  j["regime"] = otto::to_string(r);
  j["eta_c"] = eta_c;
  j["tau"] = tau;

  const auto omega = eng::eta_at_max_omega(r, eta_c);
  j["eta_omega"] = omega.value;
  j["r_omega"] = eng::fractional_loss(omega.value, eta_c);
  put_trace(j, omega.trace);
  if (omega.trace.contains("z_star"))
    j["z_star_omega"] = omega.trace.at("z_star");
  if (omega.trace.contains("eta_max"))
    j["eta_max"] = omega.trace.at("eta_max");
  if (otto::is_asymmetric(r)) {
    const auto emax = eng::eta_max(r, tau);
    const auto zo = eng::z_star_max_omega(r, tau);
    j["eta_mw"] = eng::eta_max_work(r, eta_c);
    j["eta_max"] = emax.value;
    j["z_star_omega"] = zo.value;
    j["z_star_mw"] = eng::z_star_max_work(tau);
    j["z_star_max"] = emax.trace.at("z_star");
    j["omega_max"] = eng::omega_objective(r, zo.value, tau);
    j["r_mw"] = eng::fractional_loss_max_work(r, eta_c);
    j["delta"] = omega.value - eng::eta_max_work(r, eta_c);
    put_trace(j, emax.trace);
    put_trace(j, zo.trace);
  }
  if (z) {
    if (!otto::is_asymmetric(r))
      throw sweep::usage_error("--z is supported for the sc and se regimes");
    const auto p = eng::engine_point(r, *z, tau);
    j["z"] = p.z;
    j["eta"] = p.eta;
    j["w"] = p.w;
    j["q_h"] = p.q_h;
    j["omega"] = p.omega_value;
  }
  return j;
}

json fridge_point(Regime r, double zeta_c, std::optional<double> z) {
  namespace fr = otto::fridge;
  const double tau = zeta_c / (1.0 + zeta_c);
  json j;
  j["device"] = "fridge";
  j["regime"] = otto::to_string(r);
  j["zeta_c"] = zeta_c;
  j["tau"] = tau;

  const auto omega = fr::cop_at_max_omega(r, zeta_c);
  j["cop_omega"] = omega.value;
  put_trace(j, omega.trace);
  if (otto::is_asymmetric(r)) {
    const auto cmax = fr::cop_max(r, zeta_c);
    const double zo = omega.trace.at(r == Regime::SuddenCompression ? "M" : "Y");
    j["cop_max"] = cmax.value;
    j["z_star_max"] = cmax.trace.at("z_star");
    j["z_star_omega"] = zo;
    j["omega_max"] = fr::omega_objective_fridge(r, zo, tau);
  }
  if (z) {
    if (!otto::is_asymmetric(r))
      throw sweep::usage_error("--z is supported for the sc and se regimes");
    const auto p = fr::fridge_point(r, *z, tau);
    j["z"] = p.z;
    j["zeta"] = p.zeta;
    j["q_c"] = p.q_c;
    j["w_in"] = p.w_in;
    j["omega"] = p.omega_value;
  }
  return j;
}

json error_json(const char* kind, const std::string& message, const std::string& condition = {}) {
  json j;
  j["error"] = kind;
  j["message"] = message;
  if (!condition.empty())
    j["condition"] = condition;
  return j;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed forms and numeric checks for the asymmetric quantum harmonic Otto cycle",
               "otto-lab"};
  app.require_subcommand(1);

  // sweep
  std::string device = "engine", axis, out_path;
  std::vector<std::string> regimes, quantities;
  double start = 0, stop = 0;
  int steps = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "CSV grid over eta_c (engine) or zeta_c (fridge)");
  sweep_cmd->add_option("--device", device, "engine|fridge")->capture_default_str();
  sweep_cmd->add_option("--regime", regimes, "sc|se|adi|ss (repeatable)")->required();
  sweep_cmd->add_option("--axis", axis, "eta_c|zeta_c (default follows --device)");
  sweep_cmd->add_option("--quantity", quantities,
                        "eta_omega|eta_mw|eta_max|r_omega|r_mw|delta (engine), "
                        "cop_omega|cop_max (fridge); repeatable, default all for the device");
  sweep_cmd->add_option("--start", start, "first grid value")->required();
  sweep_cmd->add_option("--stop", stop, "last grid value")->required();
  sweep_cmd->add_option("--steps", steps, "number of grid points (>= 2)")->required();
  sweep_cmd->add_option("--out", out_path, "write CSV to this file instead of stdout");

  // figure
  std::string figure_id;
  int figure_steps = sweep::default_figure_steps;
  auto* figure_cmd = app.add_subcommand("figure", "CSV data of fig2, fig4 or fig6");
  figure_cmd->add_option("--id", figure_id, "fig2|fig4|fig6")->required();
  figure_cmd->add_option("--steps", figure_steps, "grid points (>= 50)")->capture_default_str();
  figure_cmd->add_option("--out", out_path, "write CSV to this file instead of stdout");

  // verify
  otto::verify::Tolerances tol;
  auto* verify_cmd = app.add_subcommand("verify", "closed forms vs numeric oracle, orderings, cubic suite");
  verify_cmd->add_option("--tol-omega", tol.omega, "tolerance at max Omega")->capture_default_str();
  verify_cmd->add_option("--tol-mw", tol.max_work, "tolerance at max work")->capture_default_str();

  // point
  std::string point_device, point_regime;
  double point_value = 0;
  std::optional<double> point_z;
  auto* point_cmd = app.add_subcommand("point", "all quantities at one eta_c or zeta_c as JSON");
  point_cmd->add_option("device,--device", point_device, "engine|fridge")->required();
  point_cmd->add_option("regime,--regime", point_regime, "sc|se|adi|ss")->required();
  point_cmd->add_option("value,--value", point_value, "eta_c (engine) or zeta_c (fridge)")->required();
  point_cmd->add_option("--z", point_z, "also evaluate the cycle at this compression ratio");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*sweep_cmd) {
      sweep::SweepSpec spec;
      spec.device = sweep::parse_device(device);
      for (const auto& r : regimes)
        spec.regimes.push_back(sweep::parse_regime(r));
      spec.axis = axis.empty() ? (spec.device == Device::Engine ? sweep::Axis::EtaC : sweep::Axis::ZetaC)
                               : sweep::parse_axis(axis);
      if (quantities.empty()) {
        quantities = spec.device == Device::Engine
                         ? std::vector<std::string>{"eta_omega", "eta_mw", "eta_max", "r_omega", "r_mw", "delta"}
                         : std::vector<std::string>{"cop_omega", "cop_max"};
      }
      for (const auto& q : quantities)
        spec.quantities.push_back(sweep::parse_quantity(q));
      spec.start = start;
      spec.stop = stop;
      spec.steps = steps;
      const sweep::Table t = sweep::run_sweep(spec);
      return Output{out_path}.with_stream([&](std::ostream& os) { sweep::write_csv(os, t); });
    }

    if (*figure_cmd) {
      const sweep::Table t = sweep::run_figure(sweep::parse_figure(figure_id), figure_steps);
      return Output{out_path}.with_stream([&](std::ostream& os) { sweep::write_csv(os, t); });
    }

    if (*verify_cmd) {
      const auto checks = otto::verify::run_all(tol);
      int failed = 0;
      for (const auto& c : checks) {
        std::printf("%s  %-72s worst=%-12s tol=%s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                    sweep::format_number(c.worst).c_str(),
                    c.tolerance > 0 ? sweep::format_number(c.tolerance).c_str() : "margin>0");
        failed += c.passed ? 0 : 1;
      }
      std::printf("%zu checks, %d failed\n", checks.size(), failed);
      return failed ? verification : ok;
    }

    if (*point_cmd) {
      try {
        const Device d = sweep::parse_device(point_device);
        const Regime r = sweep::parse_regime(point_regime);
        const json j = d == Device::Engine ? engine_point(r, point_value, point_z)
                                           : fridge_point(r, point_value, point_z);
        std::cout << j.dump(2) << '\n';
        return ok;
      } catch (const otto::infeasible_device& e) {
        std::cout << error_json("infeasible_device", e.what(), e.condition()).dump(2) << '\n';
        return domain;
      } catch (const otto::domain_error& e) {
        std::cout << error_json("domain_error", e.what(), e.condition()).dump(2) << '\n';
        return domain;
      } catch (const sweep::usage_error& e) {
        std::cout << error_json("usage_error", e.what()).dump(2) << '\n';
        return usage;
      }
    }
  } catch (const sweep::usage_error& e) {
    std::cerr << "otto-lab: " << e.what() << '\n';
    return usage;
  } catch (const otto::domain_error& e) {
    std::cerr << "otto-lab: " << e.what() << '\n';
    return domain;
  }
  return usage;
}
