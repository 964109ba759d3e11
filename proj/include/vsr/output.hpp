#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "vsr/experiment.hpp"

namespace vsr {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

/// Columns: t, rho11, rho22, rho33, re_rho32, im_rho32, re_R21, im_R21,
/// re_R31, im_R31, abs_emitted, abs_acting, phase_unwrapped.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

void write_metrics_json(std::ostream& out, const ScenarioConfig& cfg, const PulseMetrics& m);

/// One row per swept value; the swept value is the first column.
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// gnuplot script plotting |field| and populations from a trajectory CSV.
std::string plot_script(const std::string& title, const std::string& trajectory_file);

struct OutputPaths {
  std::filesystem::path trajectory;
  std::filesystem::path metrics;
  std::filesystem::path plot;  // empty when not requested
};

/// Writes <dir>/<prefix>_trajectory.csv, <prefix>_metrics.json and
/// optionally <prefix>_plot.gp. Throws IoError.
OutputPaths emit_outputs(const ScenarioConfig& cfg, const ScenarioResult& result);

std::filesystem::path emit_sweep(const SweepSpec& spec, const std::vector<SweepRow>& rows);

}  // namespace vsr
