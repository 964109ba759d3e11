#include "vsr/observables.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "vsr/basis.hpp"
#include "vsr/error.hpp"

namespace vsr {

double trace_of(const DensityState& s) { return s.rho11 + s.rho22 + s.rho33; }

double quadratic_invariant(const DensityState& s) {
  return s.rho11 * s.rho11 + s.rho22 * s.rho22 + s.rho33 * s.rho33 +
         2.0 * (std::norm(s.rho32) + std::norm(s.R31) + std::norm(s.R21));
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinPeakGrowth = 1e3;
constexpr double kMinModulationPower = 0.05;
constexpr double kMinModulationDepth = 1e-3;
constexpr double kBlockedFraction = 0.1;
constexpr std::size_t kPadFactor = 16;

// The FFTW planner is not reentrant; execution on distinct plans is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

/// |X_j|^2 for j = 0 .. n/2 of the real DFT of x zero-padded to n.
std::vector<double> power_spectrum(const std::vector<double>& x, std::size_t n) {
  std::vector<double> in(n, 0.0);
  std::copy(x.begin(), x.end(), in.begin());
  const std::size_t bins = n / 2 + 1;
  fftw_complex* out = fftw_alloc_complex(bins);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::vector<double> power(bins);
  for (std::size_t j = 0; j < bins; ++j) power[j] = out[j][0] * out[j][0] + out[j][1] * out[j][1];
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(out);
  return power;
}

double sample_spacing(const Trajectory& traj) {
  if (traj.size() < 2) return traj.control.dt_out;
  return traj.samples[1].t - traj.samples[0].t;
}

double wrap_to_pi(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a;
}

}  // namespace

std::vector<double> smoothed_envelope(const Trajectory& traj) {
  const std::size_t n = traj.size();
  std::vector<double> amp(n);
  for (std::size_t k = 0; k < n; ++k) amp[k] = std::abs(traj.samples[k].field.emitted_amp);
  const double w = std::abs(traj.params.omega32);
  if (w == 0.0 || n < 3) return amp;

  const double dt = sample_spacing(traj);
  auto width = static_cast<std::size_t>(std::lround(2.0 * kPi / w / dt));
  if (width % 2 == 0) ++width;
  const std::size_t half = width / 2;
  if (half == 0) return amp;

  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + amp[k];
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t lo = k >= half ? k - half : 0;
    const std::size_t hi = std::min(n - 1, k + half);
    out[k] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::optional<double> modulation_frequency(const Trajectory& traj, const std::vector<double>& envelope,
                                           double t_peak) {
  std::vector<double> residual;
  double largest = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.samples[k].t > t_peak) {
      const double amp = std::abs(traj.samples[k].field.emitted_amp);
      largest = std::max(largest, amp);
      residual.push_back(amp - envelope[k]);
    }
  }
  const std::size_t n = residual.size();
  if (n < 16) return std::nullopt;
  // Smoothing bias on a featureless decay is not a modulation.
  const double rms =
      std::sqrt(std::inner_product(residual.begin(), residual.end(), residual.begin(), 0.0) / static_cast<double>(n));
  if (rms < kMinModulationDepth * largest) return std::nullopt;

  const std::vector<double> coarse = power_spectrum(residual, n);
  const double total = std::accumulate(coarse.begin() + 1, coarse.end(), 0.0);
  if (!(total > 0.0)) return std::nullopt;
  const auto peak_it = std::max_element(coarse.begin() + 1, coarse.end());
  const auto peak_bin = static_cast<std::size_t>(peak_it - coarse.begin());
  const std::size_t lo = std::max<std::size_t>(1, peak_bin >= 2 ? peak_bin - 2 : 1);
  const std::size_t hi = std::min(coarse.size() - 1, peak_bin + 2);
  double band = 0.0;
  for (std::size_t j = lo; j <= hi; ++j) band += coarse[j];
  if (band / total < kMinModulationPower) return std::nullopt;

  // Refine the peak location on a zero-padded spectrum.
  std::size_t padded = 1;
  while (padded < kPadFactor * n) padded <<= 1;
  const std::vector<double> fine = power_spectrum(residual, padded);
  const double scale = static_cast<double>(padded) / static_cast<double>(n);
  const auto fine_lo = static_cast<std::size_t>(std::max(1.0, (static_cast<double>(peak_bin) - 1.5) * scale));
  const auto fine_hi =
      std::min(fine.size() - 1, static_cast<std::size_t>((static_cast<double>(peak_bin) + 1.5) * scale));
  std::size_t best = fine_lo;
  for (std::size_t j = fine_lo; j <= fine_hi; ++j) {
    if (fine[j] > fine[best]) best = j;
  }
  const double dt = sample_spacing(traj);
  return 2.0 * kPi * static_cast<double>(best) / (static_cast<double>(padded) * dt);
}

Branching branching_summary(const Trajectory& traj) {
  const DensityState& s0 = traj.front().state;
  const DensityState& s1 = traj.back().state;
  Branching b;
  b.delta33 = s0.rho33 - s1.rho33;
  b.delta22 = s0.rho22 - s1.rho22;
  b.blocked31 = b.delta33 <= kBlockedFraction * s0.rho33;
  b.blocked21 = b.delta22 <= kBlockedFraction * s0.rho22;
  return b;
}

PulseMetrics pulse_metrics(const Trajectory& traj) {
  if (traj.size() < 3) throw Error(ErrorKind::InvalidInput, "trajectory too short for pulse metrics");

  PulseMetrics m;
  const double amp0 = std::abs(traj.front().field.emitted_amp);
  for (const auto& s : traj.samples) m.peak_amp = std::max(m.peak_amp, std::abs(s.field.emitted_amp));
  if (!(m.peak_amp > 0.0) || m.peak_amp < kMinPeakGrowth * amp0) {
    std::ostringstream msg;
    msg << "peak |field| " << m.peak_amp << " never exceeded " << kMinPeakGrowth << " x initial " << amp0;
    throw Error(ErrorKind::NoPulse, msg.str());
  }

  const std::vector<double> env = smoothed_envelope(traj);
  const auto n = env.size();
  const auto i_max = static_cast<std::size_t>(std::max_element(env.begin(), env.end()) - env.begin());
  const double dt = sample_spacing(traj);

  m.t_peak = traj.samples[i_max].t;
  if (i_max > 0 && i_max + 1 < n) {
    const double a = env[i_max - 1], b = env[i_max], c = env[i_max + 1];
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) m.t_peak += 0.5 * dt * (a - c) / denom;
  }

  const double half = 0.5 * env[i_max];
  auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double ti = traj.samples[inside].t, to = traj.samples[outside].t;
    const double fi = env[inside], fo = env[outside];
    return ti + (to - ti) * (fi - half) / (fi - fo);
  };
  double left = traj.front().t;
  for (std::size_t k = i_max; k > 0; --k) {
    if (env[k - 1] < half) {
      left = crossing(k, k - 1);
      break;
    }
  }
  double right = traj.back().t;
  for (std::size_t k = i_max; k + 1 < n; ++k) {
    if (env[k + 1] < half) {
      right = crossing(k, k + 1);
      break;
    }
  }
  m.fwhm = right - left;

  const DensityState& last = traj.back().state;
  const BrightDarkState bd = to_bright_dark(last, traj.params);
  m.final_pops = {last.rho11, last.rho22, last.rho33, bd.rho_pp, bd.rho_mm};
  m.branching = branching_summary(traj);
  m.oscillation_freq = modulation_frequency(traj, env, m.t_peak);
  m.settled = traj.settled;
  return m;
}

std::vector<double> unwrapped_phase(const Trajectory& traj) {
  std::vector<double> phase(traj.size());
  double prev = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double raw = std::arg(traj.samples[k].field.emitted_amp);
    phase[k] = k == 0 ? raw : phase[k - 1] + wrap_to_pi(raw - prev);
    prev = raw;
  }
  return phase;
}

std::vector<FrequencySample> instantaneous_frequency(const Trajectory& traj) {
  const std::size_t n = traj.size();
  if (n < 2) throw Error(ErrorKind::InvalidInput, "trajectory too short for frequency estimate");

  for (std::size_t k = 1; k < n; ++k) {
    const double step = wrap_to_pi(std::arg(traj.samples[k].field.emitted_amp) -
                                   std::arg(traj.samples[k - 1].field.emitted_amp));
    if (std::abs(step) > 0.9 * kPi) {
      std::ostringstream msg;
      msg << "phase step " << step << " between t = " << traj.samples[k - 1].t << " and "
          << traj.samples[k].t << " is ambiguous";
      throw Error(ErrorKind::PhaseUnwrapFailure, msg.str());
    }
  }

  const std::vector<double> phase = unwrapped_phase(traj);
  std::vector<FrequencySample> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t lo = k == 0 ? 0 : k - 1;
    const std::size_t hi = k + 1 == n ? k : k + 1;
    out[k].t = traj.samples[k].t;
    out[k].omega = (phase[hi] - phase[lo]) / (traj.samples[hi].t - traj.samples[lo].t);
  }
  return out;
}

}  // namespace vsr
