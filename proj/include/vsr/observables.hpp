#pragma once

#include <optional>
#include <vector>

#include "vsr/dynamics.hpp"
#include "vsr/invariants.hpp"

namespace vsr {

struct FinalPopulations {
  double rho11 = 0.0;
  double rho22 = 0.0;
  double rho33 = 0.0;
  double rho_pp = 0.0;
  double rho_mm = 0.0;
};

/// Population transferred to the ground state through each channel.
struct Branching {
  double delta33 = 0.0;  // rho33(0) - rho33(end), channel 3 -> 1
  double delta22 = 0.0;  // rho22(0) - rho22(end), channel 2 -> 1
  bool blocked31 = false;
  bool blocked21 = false;
};

struct PulseMetrics {
  double t_peak = 0.0;    // delay time, tau_R
  double fwhm = 0.0;      // full width at half maximum of the smoothed |emitted| envelope, tau_R
  double peak_amp = 0.0;  // max |emitted_amp|
  FinalPopulations final_pops;
  Branching branching;
  std::optional<double> oscillation_freq;  // angular, 1/tau_R
  bool settled = false;
};

struct FrequencySample {
  double t = 0.0;
  double omega = 0.0;
};

/// Centered moving average of |emitted_amp| over a window 2 pi / omega32
/// (no smoothing when omega32 == 0).
std::vector<double> smoothed_envelope(const Trajectory& traj);

/// Throws NoPulse when the field never grew past 1e3 times its initial
/// amplitude.
PulseMetrics pulse_metrics(const Trajectory& traj);

Branching branching_summary(const Trajectory& traj);

/// Phase of emitted_amp, unwrapped sample to sample without validation.
std::vector<double> unwrapped_phase(const Trajectory& traj);

/// Central-difference derivative of the unwrapped phase. Throws
/// PhaseUnwrapFailure when an adjacent wrapped phase step is too close to
/// pi to resolve its direction (|step| > 0.9 pi).
std::vector<FrequencySample> instantaneous_frequency(const Trajectory& traj);

/// Dominant angular frequency of the post-peak modulation of |emitted|;
/// empty unless its spectral band holds at least 5% of the power.
std::optional<double> modulation_frequency(const Trajectory& traj, const std::vector<double>& envelope,
                                           double t_peak);

}  // namespace vsr
