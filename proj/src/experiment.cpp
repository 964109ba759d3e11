#include "vsr/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <thread>

#include "vsr/analytics.hpp"
#include "vsr/error.hpp"

namespace vsr {

namespace {

const std::vector<std::string_view>& scenario_keys() {
  static const std::vector<std::string_view> keys = {
      "name",
      "params.omega32",
      "params.delta_L",
      "params.mu21",
      "params.mu31",
      "init.rho22",
      "init.rho33",
      "init.rho32",
      "init.rho32_im",
      "init.R21",
      "init.R21_im",
      "init.R31",
      "init.R31_im",
      "run.t_end",
      "integrator.rel_tol",
      "integrator.abs_tol",
      "integrator.invariant_tol",
      "integrator.initial_step",
      "integrator.stop_when_settled",
      "integrator.settle_rate",
      "integrator.settle_window",
      "output.dt",
      "output.dir",
      "output.prefix",
      "output.plot_script",
      "sweep.param",
      "sweep.values",
      "sweep.parallelism",
  };
  return keys;
}

cplx read_complex(const KeyValueConfig& cfg, const std::string& key, double re_default) {
  return {cfg.get_double(key, re_default), cfg.get_double(key + "_im", 0.0)};
}

}  // namespace

std::string_view to_string(SweepParam p) noexcept {
  switch (p) {
    case SweepParam::DeltaL: return "delta_L";
    case SweepParam::Omega32: return "omega32";
    case SweepParam::Rho32: return "rho32_0";
  }
  return "?";
}

SweepParam parse_sweep_param(std::string_view name) {
  if (name == "delta_L") return SweepParam::DeltaL;
  if (name == "omega32") return SweepParam::Omega32;
  if (name == "rho32_0") return SweepParam::Rho32;
  throw Error(ErrorKind::ConfigError,
              "unknown sweep parameter '" + std::string(name) + "' (expected delta_L, omega32, rho32_0)");
}

ScenarioConfig scenario_from_config(const KeyValueConfig& cfg) {
  cfg.require_known_keys(scenario_keys());

  ScenarioConfig sc;
  sc.name = cfg.get_string("name", "run");
  sc.params = make_params(cfg.get_double("params.omega32"), cfg.get_double("params.delta_L", 0.0),
                          cfg.get_double("params.mu21", 1.0), cfg.get_double("params.mu31", 1.0));

  sc.init.rho22 = cfg.get_double("init.rho22");
  sc.init.rho33 = cfg.get_double("init.rho33");
  sc.init.rho32 = read_complex(cfg, "init.rho32", 0.0);
  sc.init.R21 = read_complex(cfg, "init.R21", 1e-8);
  sc.init.R31 = read_complex(cfg, "init.R31", 1e-8);

  sc.t_end = cfg.get_double("run.t_end", 100.0);
  IntegratorControl& c = sc.control;
  c.rel_tol = cfg.get_double("integrator.rel_tol", c.rel_tol);
  c.abs_tol = cfg.get_double("integrator.abs_tol", c.abs_tol);
  c.invariant_tol = cfg.get_double("integrator.invariant_tol", c.invariant_tol);
  c.initial_step = cfg.get_double("integrator.initial_step", c.initial_step);
  c.stop_when_settled = cfg.get_bool("integrator.stop_when_settled", c.stop_when_settled);
  c.settle_rate = cfg.get_double("integrator.settle_rate", c.settle_rate);
  c.settle_window = cfg.get_double("integrator.settle_window", c.settle_window);
  c.dt_out = cfg.get_double("output.dt", c.dt_out);

  sc.output.dir = cfg.get_string("output.dir", ".");
  sc.output.prefix = cfg.get_string("output.prefix", sc.name);
  sc.output.plot_script = cfg.get_bool("output.plot_script", true);

  validate_scenario(sc);
  return sc;
}

std::optional<SweepSpec> sweep_from_config(const KeyValueConfig& cfg, const ScenarioConfig& base) {
  if (!cfg.has("sweep.param") && !cfg.has("sweep.values")) return std::nullopt;
  SweepSpec spec;
  spec.base = base;
  spec.param = parse_sweep_param(cfg.get_string("sweep.param", ""));
  spec.values = cfg.get_list("sweep.values");
  const double par = cfg.get_double("sweep.parallelism", 0.0);
  if (par < 0.0 || par != std::floor(par)) {
    throw Error(ErrorKind::ConfigError, "sweep.parallelism must be a non-negative integer");
  }
  spec.parallelism = static_cast<unsigned>(par);
  validate_sweep(spec);
  return spec;
}

void validate_scenario(const ScenarioConfig& cfg) {
  make_params(cfg.params.omega32, cfg.params.delta_L, cfg.params.mu21, cfg.params.mu31);
  const DensityState s0 = cfg.init.to_state();
  validate_control(cfg.control);
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) {
    throw Error(ErrorKind::InvalidInput, "t_end must be > 0");
  }
  const double Z0 = inversion_condition(s0, cfg.params).Z0;
  const double fastest =
      std::max({std::abs(cfg.params.omega32), 4.0 * Z0 * cfg.params.delta_L, 1.0});
  const double dt_max = 0.01 * 2.0 * std::numbers::pi / fastest;
  if (cfg.control.dt_out > dt_max * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "output dt = " << cfg.control.dt_out << " exceeds the phase-resolution limit " << dt_max;
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
}

void validate_sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw Error(ErrorKind::ConfigError, "sweep needs at least one value");
  for (double v : spec.values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::ConfigError, "sweep values must be finite");
  }
  validate_scenario(spec.base);
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParam param, double value) {
  ScenarioConfig sc = base;
  switch (param) {
    case SweepParam::DeltaL: sc.params.delta_L = value; break;
    case SweepParam::Omega32: sc.params.omega32 = value; break;
    case SweepParam::Rho32: sc.init.rho32 = {value, 0.0}; break;
  }
  return sc;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  validate_scenario(cfg);
  ScenarioResult r;
  r.trajectory = integrate(cfg.init.to_state(), cfg.params, cfg.t_end, cfg.control);
  r.metrics = pulse_metrics(r.trajectory);
  return r;
}

unsigned effective_parallelism(unsigned requested, std::size_t jobs) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SR_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  n = static_cast<unsigned>(std::min<std::size_t>(n, jobs));
  return std::max(1u, n);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw Error(ErrorKind::ConfigError, "sweep needs at least one value");
  std::vector<SweepRow> rows(spec.values.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      row.value = spec.values[i];
      try {
        row.metrics = run_scenario(apply_sweep_value(spec.base, spec.param, row.value)).metrics;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };

  const unsigned threads = effective_parallelism(spec.parallelism, rows.size());
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return rows;
}

}  // namespace vsr
