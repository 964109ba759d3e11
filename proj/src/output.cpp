#include "vsr/output.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "vsr/error.hpp"

namespace vsr {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "write failed for '" + path.string() + "'");
}

nlohmann::ordered_json metrics_json(const PulseMetrics& m) {
  nlohmann::ordered_json j;
  j["t_peak"] = m.t_peak;
  j["fwhm"] = m.fwhm;
  j["peak_amp"] = m.peak_amp;
  j["final_pops"] = {{"rho11", m.final_pops.rho11},
                     {"rho22", m.final_pops.rho22},
                     {"rho33", m.final_pops.rho33},
                     {"rho_pp", m.final_pops.rho_pp},
                     {"rho_mm", m.final_pops.rho_mm}};
  j["branching"] = {{"delta33", m.branching.delta33},
                    {"delta22", m.branching.delta22},
                    {"blocked31", m.branching.blocked31},
                    {"blocked21", m.branching.blocked21}};
  j["oscillation_freq"] = m.oscillation_freq ? nlohmann::ordered_json(*m.oscillation_freq) : nullptr;
  j["settled"] = m.settled;
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,rho11,rho22,rho33,re_rho32,im_rho32,re_R21,im_R21,re_R31,im_R31,abs_emitted,abs_acting,"
         "phase_unwrapped\n";
  const std::vector<double> phase = unwrapped_phase(traj);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& smp = traj.samples[k];
    const DensityState& s = smp.state;
    const double cols[] = {smp.t,           s.rho11,         s.rho22,
                           s.rho33,         s.rho32.real(),  s.rho32.imag(),
                           s.R21.real(),    s.R21.imag(),    s.R31.real(),
                           s.R31.imag(),    std::abs(smp.field.emitted_amp),
                           std::abs(smp.field.acting_amp), phase[k]};
    for (std::size_t c = 0; c < std::size(cols); ++c) {
      if (c) out << ',';
      out << format_double(cols[c]);
    }
    out << '\n';
  }
}

void write_metrics_json(std::ostream& out, const ScenarioConfig& cfg, const PulseMetrics& m) {
  nlohmann::ordered_json j;
  j["name"] = cfg.name;
  j["params"] = {{"omega32", cfg.params.omega32},
                 {"delta_L", cfg.params.delta_L},
                 {"mu21", cfg.params.mu21},
                 {"mu31", cfg.params.mu31}};
  j["metrics"] = metrics_json(m);
  out << j.dump(2) << '\n';
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  out << to_string(spec.param)
      << ",t_peak,fwhm,peak_amp,rho11,rho22,rho33,rho_pp,rho_mm,delta33,delta22,blocked31,blocked21,"
         "oscillation_freq,status\n";
  for (const SweepRow& row : rows) {
    out << format_double(row.value);
    if (!row.metrics) {
      std::string msg = row.error;
      for (char& ch : msg) {
        if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
      }
      out << ",,,,,,,,,,,,,," << msg << '\n';
      continue;
    }
    const PulseMetrics& m = *row.metrics;
    for (double v : {m.t_peak, m.fwhm, m.peak_amp, m.final_pops.rho11, m.final_pops.rho22,
                     m.final_pops.rho33, m.final_pops.rho_pp, m.final_pops.rho_mm, m.branching.delta33,
                     m.branching.delta22}) {
      out << ',' << format_double(v);
    }
    out << ',' << (m.branching.blocked31 ? 1 : 0) << ',' << (m.branching.blocked21 ? 1 : 0) << ',';
    if (m.oscillation_freq) out << format_double(*m.oscillation_freq);
    out << ",ok\n";
  }
}

std::string plot_script(const std::string& title, const std::string& trajectory_file) {
  std::ostringstream s;
  s << "# gnuplot -p " << title << "_plot.gp\n"
    << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set multiplot layout 2,1 title '" << title << "'\n"
    << "set ylabel '|field|'\n"
    << "plot '" << trajectory_file << "' using 1:11 with lines\n"
    << "set xlabel 't / tau_R'\n"
    << "set ylabel 'populations'\n"
    << "plot '" << trajectory_file << "' using 1:2 with lines, '' using 1:3 with lines, "
    << "'' using 1:4 with lines, '' using 1:5 with lines\n"
    << "unset multiplot\n";
  return s.str();
}

OutputPaths emit_outputs(const ScenarioConfig& cfg, const ScenarioResult& result) {
  OutputPaths paths;
  const auto& dir = cfg.output.dir;
  const std::string& prefix = cfg.output.prefix;

  paths.trajectory = dir / (prefix + "_trajectory.csv");
  {
    auto out = open_for_write(paths.trajectory);
    write_trajectory_csv(out, result.trajectory);
    finish(out, paths.trajectory);
  }
  paths.metrics = dir / (prefix + "_metrics.json");
  {
    auto out = open_for_write(paths.metrics);
    write_metrics_json(out, cfg, result.metrics);
    finish(out, paths.metrics);
  }
  if (cfg.output.plot_script) {
    paths.plot = dir / (prefix + "_plot.gp");
    auto out = open_for_write(paths.plot);
    out << plot_script(prefix, paths.trajectory.filename().string());
    finish(out, paths.plot);
  }
  return paths;
}

std::filesystem::path emit_sweep(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  const auto path =
      spec.base.output.dir / (spec.base.output.prefix + "_sweep_" + std::string(to_string(spec.param)) + ".csv");
  auto out = open_for_write(path);
  write_sweep_csv(out, spec, rows);
  finish(out, path);
  return path;
}

}  // namespace vsr
