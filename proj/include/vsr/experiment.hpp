#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vsr/config.hpp"
#include "vsr/dynamics.hpp"
#include "vsr/model.hpp"
#include "vsr/observables.hpp"

namespace vsr {

struct InitialConditions {
  double rho22 = 0.0;
  double rho33 = 0.0;
  cplx rho32{};
  cplx R21{};
  cplx R31{};

  DensityState to_state() const { return initial_state(rho22, rho33, rho32, R21, R31); }
};

struct OutputSpec {
  std::filesystem::path dir = ".";
  std::string prefix = "run";
  bool plot_script = true;
};

struct ScenarioConfig {
  std::string name = "run";
  SystemParams params;
  InitialConditions init;
  double t_end = 100.0;
  IntegratorControl control;
  OutputSpec output;
};

enum class SweepParam { DeltaL, Omega32, Rho32 };

std::string_view to_string(SweepParam p) noexcept;
/// Accepts delta_L, omega32, rho32_0; throws ConfigError otherwise.
SweepParam parse_sweep_param(std::string_view name);

struct SweepSpec {
  ScenarioConfig base;
  SweepParam param = SweepParam::DeltaL;
  std::vector<double> values;
  /// 0 means one worker per hardware thread. SR_THREADS caps either way.
  unsigned parallelism = 0;
};

/// Builds and validates a scenario from a parsed config.
ScenarioConfig scenario_from_config(const KeyValueConfig& cfg);

/// Reads the optional sweep.* section; empty when there is none.
std::optional<SweepSpec> sweep_from_config(const KeyValueConfig& cfg, const ScenarioConfig& base);

/// Checks every sub-invariant plus the phase-unwrap safety bound
/// dt <= 0.01 * 2 pi / max(|omega32|, 4 Z0 Delta_L, 1).
void validate_scenario(const ScenarioConfig& cfg);

void validate_sweep(const SweepSpec& spec);

/// The scenario with `param` set to `value`.
ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParam param, double value);

struct ScenarioResult {
  Trajectory trajectory;
  PulseMetrics metrics;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg);

struct SweepRow {
  double value = 0.0;
  std::optional<PulseMetrics> metrics;
  std::string error;  // set when the run failed
};

/// Runs every value, concurrently up to the effective parallelism. Rows
/// come back in input order; a failed run is recorded in its row.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// min(requested or hardware threads, SR_THREADS, job count), at least 1.
unsigned effective_parallelism(unsigned requested, std::size_t jobs);

}  // namespace vsr
