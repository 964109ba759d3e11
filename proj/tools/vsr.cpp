// Command-line front end: run scenarios, presets and parameter sweeps, and
// convert physical film parameters into superradiance timescales.
//
// Exit codes: 0 success, 2 validation error, 3 integration/analysis failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vsr/config.hpp"
#include "vsr/error.hpp"
#include "vsr/experiment.hpp"
#include "vsr/model.hpp"
#include "vsr/output.hpp"

#ifndef VSR_PRESET_DIR
#define VSR_PRESET_DIR "presets"
#endif

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitFailure = 3;

struct Overrides {
  std::optional<std::string> out_dir;
  std::optional<double> rel_tol;
  std::optional<double> t_end;
  std::optional<double> dt;

  void apply(vsr::KeyValueConfig& cfg) const {
    if (out_dir) cfg.set("output.dir", *out_dir);
    if (rel_tol) cfg.set("integrator.rel_tol", vsr::format_double(*rel_tol));
    if (t_end) cfg.set("run.t_end", vsr::format_double(*t_end));
    if (dt) cfg.set("output.dt", vsr::format_double(*dt));
  }
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--out-dir", o.out_dir, "Directory for output files");
  cmd->add_option("--rel-tol", o.rel_tol, "Integrator relative tolerance");
  cmd->add_option("--t-end", o.t_end, "Final time in units of tau_R");
  cmd->add_option("--dt", o.dt, "Output grid spacing in units of tau_R");
}

void report_metrics(const vsr::ScenarioConfig& cfg, const vsr::PulseMetrics& m) {
  std::cout << cfg.name << ": t_peak=" << vsr::format_double(m.t_peak)
            << " fwhm=" << vsr::format_double(m.fwhm) << " rho11=" << vsr::format_double(m.final_pops.rho11)
            << " rho22=" << vsr::format_double(m.final_pops.rho22)
            << " rho33=" << vsr::format_double(m.final_pops.rho33);
  if (m.oscillation_freq) std::cout << " osc_freq=" << vsr::format_double(*m.oscillation_freq);
  std::cout << '\n';
}

int run_single(const vsr::ScenarioConfig& sc) {
  const vsr::ScenarioResult result = vsr::run_scenario(sc);
  const vsr::OutputPaths paths = vsr::emit_outputs(sc, result);
  report_metrics(sc, result.metrics);
  std::cout << "wrote " << paths.trajectory.string() << ", " << paths.metrics.string();
  if (!paths.plot.empty()) std::cout << ", " << paths.plot.string();
  std::cout << '\n';
  return kExitOk;
}

int run_sweep_and_report(const vsr::SweepSpec& spec) {
  const auto rows = vsr::run_sweep(spec);
  const auto path = vsr::emit_sweep(spec, rows);
  bool any_failed = false;
  for (const auto& row : rows) {
    std::cout << vsr::to_string(spec.param) << '=' << vsr::format_double(row.value) << ": ";
    if (row.metrics) {
      std::cout << "t_peak=" << vsr::format_double(row.metrics->t_peak)
                << " delta22=" << vsr::format_double(row.metrics->branching.delta22)
                << " delta33=" << vsr::format_double(row.metrics->branching.delta33) << '\n';
    } else {
      any_failed = true;
      std::cout << "failed: " << row.error << '\n';
    }
  }
  std::cout << "wrote " << path.string() << '\n';
  return any_failed ? kExitFailure : kExitOk;
}

int run_config(const vsr::KeyValueConfig& cfg) {
  const vsr::ScenarioConfig sc = vsr::scenario_from_config(cfg);
  if (auto sweep = vsr::sweep_from_config(cfg, sc)) return run_sweep_and_report(*sweep);
  return run_single(sc);
}

vsr::PhysicalInputs physical_from_config(const vsr::KeyValueConfig& cfg) {
  cfg.require_known_keys({"physical.wavelength_c", "physical.thickness", "physical.dipole21",
                          "physical.dipole31", "physical.concentration", "physical.tau0",
                          "physical.splitting"});
  vsr::PhysicalInputs p;
  p.wavelength_c = cfg.get_double("physical.wavelength_c");
  p.thickness = cfg.get_double("physical.thickness");
  p.concentration = cfg.get_double("physical.concentration");
  p.tau0 = cfg.get_double("physical.tau0");
  p.dipole21 = cfg.get_double("physical.dipole21", 0.0);
  p.dipole31 = cfg.get_double("physical.dipole31", 0.0);
  p.splitting = cfg.get_double("physical.splitting", 0.0);
  return p;
}

int run_timescales(const vsr::KeyValueConfig& cfg) {
  const vsr::PhysicalInputs phys = physical_from_config(cfg);
  const vsr::Timescales ts = vsr::estimate_timescales(phys);
  nlohmann::ordered_json j;
  j["tau_R_seconds"] = ts.tau_R_seconds;
  j["ratio_to_tau0"] = ts.ratio_to_tau0;
  if (cfg.has("physical.dipole21") || cfg.has("physical.dipole31")) {
    const vsr::ScaledParams sp = vsr::derive_dimensionless(phys);
    j["derived"] = {{"tau_R_seconds", sp.tau_R_seconds},
                    {"k_c_L", sp.k_c_L},
                    {"omega32", sp.params.omega32},
                    {"delta_L", sp.params.delta_L},
                    {"mu21", sp.params.mu21},
                    {"mu31", sp.params.mu31}};
  }
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

fs::path preset_dir(const std::optional<std::string>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SR_PRESET_DIR")) return env;
  return VSR_PRESET_DIR;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Superradiance of a thin film of V-type atoms"};
  app.require_subcommand(1);

  Overrides run_o, sweep_o, preset_o;
  std::string run_cfg, sweep_cfg, sweep_param, sweep_values, preset_name, phys_cfg;
  std::optional<std::string> preset_dir_flag;
  unsigned sweep_parallelism = 0;

  auto* run = app.add_subcommand("run", "Integrate one scenario config");
  run->add_option("config", run_cfg, "Scenario config file")->required();
  add_overrides(run, run_o);

  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter of a scenario config");
  sweep->add_option("config", sweep_cfg, "Scenario config file")->required();
  sweep->add_option("--param", sweep_param, "delta_L, omega32 or rho32_0")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
  sweep->add_option("--parallelism", sweep_parallelism, "Worker threads (0 = hardware)");
  add_overrides(sweep, sweep_o);

  auto* preset = app.add_subcommand("preset", "Run a shipped scenario (fig2, fig3, fig4, fig5, degenerate)");
  preset->add_option("name", preset_name, "Preset name")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "degenerate"}));
  preset->add_option("--preset-dir", preset_dir_flag, "Directory holding the preset configs");
  add_overrides(preset, preset_o);

  auto* timescales = app.add_subcommand("timescales", "Superradiance time from physical film parameters");
  timescales->add_option("config", phys_cfg, "Physical-parameter config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*run) {
      auto cfg = vsr::KeyValueConfig::load(run_cfg);
      run_o.apply(cfg);
      return run_config(cfg);
    }
    if (*sweep) {
      auto cfg = vsr::KeyValueConfig::load(sweep_cfg);
      sweep_o.apply(cfg);
      const vsr::ScenarioConfig base = vsr::scenario_from_config(cfg);
      vsr::SweepSpec spec;
      spec.base = base;
      spec.param = vsr::parse_sweep_param(sweep_param);
      spec.values = vsr::parse_number_list(sweep_values);
      spec.parallelism = sweep_parallelism;
      vsr::validate_sweep(spec);
      return run_sweep_and_report(spec);
    }
    if (*preset) {
      auto cfg = vsr::KeyValueConfig::load(preset_dir(preset_dir_flag) / (preset_name + ".cfg"));
      preset_o.apply(cfg);
      return run_config(cfg);
    }
    if (*timescales) {
      return run_timescales(vsr::KeyValueConfig::load(phys_cfg));
    }
  } catch (const vsr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return vsr::is_validation_error(e.kind()) ? kExitValidation : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
