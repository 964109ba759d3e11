// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vsr/analytics.hpp"
#include "vsr/basis.hpp"
#include "vsr/config.hpp"
#include "vsr/experiment.hpp"
#include "vsr/invariants.hpp"
#include "vsr/observables.hpp"

using namespace vsr;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [x]");
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

ScenarioConfig preset(const std::string& name) {
  return scenario_from_config(KeyValueConfig::load(std::filesystem::path(VSR_PRESET_DIR) / (name + ".cfg")));
}

ScenarioConfig with_delta(ScenarioConfig sc, double delta_L) {
  return apply_sweep_value(sc, SweepParam::DeltaL, delta_L);
}

// Every shipped scenario, sweeps expanded.
std::vector<ScenarioConfig> all_presets() {
  std::vector<ScenarioConfig> out{preset("fig2"), preset("fig3"), preset("degenerate")};
  for (const char* name : {"fig4", "fig5"}) {
    const auto cfg = KeyValueConfig::load(std::filesystem::path(VSR_PRESET_DIR) / (std::string(name) + ".cfg"));
    const ScenarioConfig base = scenario_from_config(cfg);
    const auto sweep = sweep_from_config(cfg, base);
    for (double v : sweep->values) {
      ScenarioConfig sc = apply_sweep_value(base, SweepParam::DeltaL, v);
      sc.name = std::string(name) + "@" + fmt(v);
      out.push_back(sc);
    }
  }
  return out;
}

Eigen::Matrix3cd to_matrix(const DensityState& s) {
  Eigen::Matrix3cd m;
  m << s.rho11, std::conj(s.R21), std::conj(s.R31), s.R21, s.rho22, s.rho23(), s.R31, s.rho32, s.rho33;
  return m;
}

void degenerate_oracle(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  for (double delta_L : {0.0, 1.0}) {
    ScenarioConfig sc = with_delta(preset("degenerate"), delta_L);
    sc.t_end = 20.0;
    sc.control.stop_when_settled = false;
    const ScenarioResult r = run_scenario(sc);
    const DegenerateSolution sol(0.5, std::numbers::sqrt2 * 1e-8, delta_L);
    double err = 0.0;
    for (const auto& smp : r.trajectory.samples) {
      const BrightDarkState b = to_bright_dark(smp.state, sc.params);
      const DegenerateValues v = sol(smp.t);
      err = std::max({err, std::abs(std::abs(b.R_plus1) - v.R_plus_abs), std::abs(0.5 * (b.rho_pp - b.rho11) - v.Z)});
    }
    o.require(err < 1e-6, "Delta_L=" + fmt(delta_L) + " max err " + fmt(err));
    o.require(std::abs(r.metrics.t_peak / 9.037 - 1.0) < 0.01, "t_peak " + fmt(r.metrics.t_peak));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 1.0, "runtime " + fmt(secs) + " s");
}

void conservation(Outcome& o) {
  double trace_err = 0.0, drift = 0.0, decrease = 0.0;
  for (const ScenarioConfig& sc : all_presets()) {
    const Trajectory traj = run_scenario(sc).trajectory;
    const double q0 = quadratic_invariant(traj.front().state);
    double prev = traj.front().state.rho11;
    for (const auto& smp : traj.samples) {
      trace_err = std::max(trace_err, std::abs(trace_of(smp.state) - 1.0));
      drift = std::max(drift, std::abs(quadratic_invariant(smp.state) - q0));
      decrease = std::max(decrease, prev - smp.state.rho11);
      prev = smp.state.rho11;
    }
  }
  o.require(trace_err < 1e-9, "trace err " + fmt(trace_err));
  o.require(drift < 1e-8, "quadratic drift " + fmt(drift));
  o.require(decrease <= 0.0, "largest rho11 decrease " + fmt(decrease));
}

void fig2(Outcome& o) {
  const PulseMetrics m = run_scenario(preset("fig2")).metrics;
  o.require(std::abs(m.t_peak / 18.0 - 1.0) <= 0.1, "t_peak " + fmt(m.t_peak));
  o.require(m.final_pops.rho11 > 0.99, "rho11(end) " + fmt(m.final_pops.rho11));
  const double f = m.oscillation_freq.value_or(0.0);
  o.require(std::abs(f / 5.0 - 1.0) <= 0.05, "modulation " + fmt(f));
}

void fig3(Outcome& o) {
  const PulseMetrics m2 = run_scenario(preset("fig2")).metrics;
  const PulseMetrics m3 = run_scenario(preset("fig3")).metrics;
  o.require(std::abs(m3.final_pops.rho22 - 0.25) <= 0.02, "rho22(end) " + fmt(m3.final_pops.rho22));
  o.require(std::abs(m3.final_pops.rho33 - 0.25) <= 0.02, "rho33(end) " + fmt(m3.final_pops.rho33));
  const double tr = m3.t_peak / m2.t_peak, wr = m3.fwhm / m2.fwhm;
  o.require(std::abs(tr / 2.0 - 1.0) <= 0.15, "t_peak ratio " + fmt(tr));
  o.require(std::abs(wr / 2.0 - 1.0) <= 0.15, "fwhm ratio " + fmt(wr));
}

void blocking(Outcome& o) {
  const ScenarioConfig base = preset("fig4");
  const PulseMetrics hi = run_scenario(with_delta(base, 1.0)).metrics;
  o.require(hi.final_pops.rho22 >= 0.45, "Delta_L=1 rho22 " + fmt(hi.final_pops.rho22));
  o.require(hi.final_pops.rho33 <= 0.05, "rho33 " + fmt(hi.final_pops.rho33));
  o.require(hi.t_peak >= 16.0 && hi.t_peak <= 20.0, "t_peak " + fmt(hi.t_peak));
  const PulseMetrics lo = run_scenario(with_delta(base, 0.02)).metrics;
  const double gap = std::abs(lo.final_pops.rho22 - lo.final_pops.rho33);
  o.require(gap < 0.03, "Delta_L=0.02 |rho22-rho33| " + fmt(gap));
  const PulseMetrics crit = run_scenario(with_delta(base, 1.0 / 7)).metrics;
  o.require(crit.final_pops.rho22 > lo.final_pops.rho22 && crit.final_pops.rho22 < hi.final_pops.rho22,
            "Delta_L=1/7 rho22 " + fmt(crit.final_pops.rho22));
}

void linear_stage(Outcome& o) {
  const ScenarioConfig sc = with_delta(preset("fig4"), 1.0 / 7);
  const Trajectory traj = run_scenario(sc).trajectory;
  std::vector<double> t, ln31, ln21, ln_ratio;
  for (const auto& smp : traj.samples) {
    if (smp.t < 5.0 || smp.t > 15.0) continue;
    t.push_back(smp.t);
    ln31.push_back(std::log(std::abs(smp.state.R31)));
    ln21.push_back(std::log(std::abs(smp.state.R21)));
    ln_ratio.push_back(ln31.back() - ln21.back());
  }
  const LinearRates rates = linear_rates(sc.params, linearization_weight(sc.init.to_state()));
  const double g31 = testing::fit_slope(t, ln31), g21 = testing::fit_slope(t, ln21);
  const double slope = testing::fit_slope(t, ln_ratio);
  o.require(std::abs(g31 / rates.lambda2.real() - 1.0) < 0.05,
            "|R31| rate " + fmt(g31) + " vs " + fmt(rates.lambda2.real()));
  o.require(std::abs(g21 / rates.lambda1.real() - 1.0) < 0.05,
            "|R21| rate " + fmt(g21) + " vs " + fmt(rates.lambda1.real()));
  o.require(std::abs(slope * 35.0 - 1.0) < 0.05, "ratio slope " + fmt(slope));
}

void chirp(Outcome& o) {
  ScenarioConfig sc = with_delta(preset("degenerate"), 1.0);
  sc.t_end = 20.0;
  sc.control.stop_when_settled = false;
  const auto freq = instantaneous_frequency(run_scenario(sc).trajectory);
  double early = 0.0, late = 0.0;
  for (const auto& f : freq) {
    if (f.t >= 1.0 && f.t <= 4.0) early = std::max(early, std::abs(f.omega / -2.0 - 1.0));
    if (f.t >= 15.0 && f.t <= 19.0) late = std::max(late, std::abs(f.omega / 2.0 - 1.0));
  }
  o.require(early < 0.05, "early plateau rel dev " + fmt(early));
  o.require(late < 0.05, "late plateau rel dev " + fmt(late));
}

void basis_paths(Outcome& o) {
  double worst = 0.0;
  for (const ScenarioConfig& sc : all_presets()) {
    const DensityState s0 = sc.init.to_state();
    IntegratorControl ctrl = sc.control;
    ctrl.stop_when_settled = false;
    const Trajectory bare = integrate(s0, sc.params, sc.t_end, ctrl);
    const auto bd = integrate_bright_dark(to_bright_dark(s0, sc.params), sc.params, sc.t_end, ctrl);
    if (bd.size() != bare.size()) {
      o.require(false, sc.name + " grid mismatch");
      continue;
    }
    for (std::size_t k = 0; k < bd.size(); ++k) {
      const DensityState s = from_bright_dark(bd[k].state, sc.params);
      const DensityState& r = bare.samples[k].state;
      worst = std::max({worst, std::abs(s.rho11 - r.rho11), std::abs(s.rho22 - r.rho22), std::abs(s.rho33 - r.rho33)});
    }
  }
  o.require(worst < 1e-8, "population gap " + fmt(worst));

  std::mt19937_64 rng(1);
  double push = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const SystemParams p = testing::random_params(rng);
    const DensityState s = testing::random_pure_state(rng);
    const double a = p.mu21 / std::numbers::sqrt2, c = p.mu31 / std::numbers::sqrt2;
    Eigen::Matrix3cd u;
    u << 1, 0, 0, 0, a, c, 0, -c, a;
    const StateDerivative d = rhs_original(s, p);
    DensityState ds;
    ds.R31 = d.R31;
    ds.R21 = d.R21;
    ds.rho32 = d.rho32;
    ds.rho11 = d.rho11;
    ds.rho22 = d.rho22;
    ds.rho33 = d.rho33;
    const Eigen::Matrix3cd m = u * to_matrix(ds) * u.adjoint();
    const BrightDarkDerivative b = rhs_bright_dark(to_bright_dark(s, p), p);
    push = std::max({push, std::abs(b.rho11 - m(0, 0)), std::abs(b.rho_pp - m(1, 1)), std::abs(b.rho_mm - m(2, 2)),
                     std::abs(b.R_plus1 - m(1, 0)), std::abs(b.R_minus1 - m(2, 0)), std::abs(b.rho_pm - m(1, 2))});
  }
  o.require(push < 1e-12, "pushforward " + fmt(push));
}

void fig5(Outcome& o) {
  const ScenarioConfig base = preset("fig5");
  std::vector<PulseMetrics> ms;
  for (double d : {0.25, 0.5, 1.0}) ms.push_back(run_scenario(with_delta(base, d)).metrics);
  double lo = ms[0].t_peak, hi = ms[0].t_peak;
  for (const auto& m : ms) {
    lo = std::min(lo, m.t_peak);
    hi = std::max(hi, m.t_peak);
  }
  o.require((hi - lo) / lo < 0.05, "t_peak spread " + fmt((hi - lo) / lo));
  bool increasing = true;
  std::string freqs;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (!ms[i].oscillation_freq) increasing = false;
    freqs += (i ? "," : "") + (ms[i].oscillation_freq ? fmt(*ms[i].oscillation_freq) : std::string("none"));
    if (i && ms[i].oscillation_freq && ms[i - 1].oscillation_freq &&
        !(*ms[i].oscillation_freq > *ms[i - 1].oscillation_freq))
      increasing = false;
  }
  o.require(increasing, "frequencies " + freqs);
  double trapped = 1.0;
  for (const auto& m : ms) trapped = std::min(trapped, m.final_pops.rho_mm);
  o.require(trapped > 0.0, "min rho_mm(end) " + fmt(trapped));
}

void timescales(Outcome& o) {
  PhysicalInputs p;
  p.wavelength_c = 5e-5;
  p.thickness = 0.1 * p.wavelength_c;
  p.concentration = 1e21;
  p.tau0 = 1e-8;
  const Timescales ts = estimate_timescales(p);
  o.require(ts.tau_R_seconds >= 5e-15 && ts.tau_R_seconds <= 10e-15, "tau_R " + fmt(ts.tau_R_seconds) + " s");
  const double closed = 8.0 * std::numbers::pi * p.tau0 /
                        (3.0 * p.concentration * p.wavelength_c * p.wavelength_c * p.thickness);
  const double rel = std::abs(ts.tau_R_seconds / closed - 1.0);
  o.require(rel < 4 * std::numeric_limits<double>::epsilon(), "rel dev from closed form " + fmt(rel));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"degenerate analytic oracle", degenerate_oracle},
      {"conservation on every preset", conservation},
      {"coherent split doublet pulse", fig2},
      {"incoherent mixture pulse", fig3},
      {"channel blocking threshold", blocking},
      {"linear-stage growth law", linear_stage},
      {"degenerate chirp", chirp},
      {"basis-path equivalence", basis_paths},
      {"local-field sweep on the coherent doublet", fig5},
      {"timescale formula", timescales},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.str().c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed;
}
