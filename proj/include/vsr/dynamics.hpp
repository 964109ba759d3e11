#pragma once

#include <cstddef>
#include <vector>

#include "vsr/model.hpp"
#include "vsr/ode.hpp"

namespace vsr {

/// Time derivative of a DensityState, units 1/tau_R.
struct StateDerivative {
  cplx R31{};
  cplx R21{};
  cplx rho32{};
  double rho11 = 0.0;
  double rho22 = 0.0;
  double rho33 = 0.0;
};

/// Radiated and acting field envelopes (dimensionless).
struct FieldSample {
  cplx emitted_amp{};  // mu21 R21 + mu31 R31
  cplx acting_amp{};   // (i + Delta_L tau_R) * emitted_amp
};

struct IntegratorControl {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double invariant_tol = 1e-8;
  double dt_out = 0.01;
  /// <= 0 selects 1e-3 * min(2 pi / max(|omega32|, 1), 1).
  double initial_step = 0.0;
  /// Stop once the emission has died out: after the field has grown past
  /// 1e3 times its initial amplitude, d(rho11)/dt must stay below
  /// settle_rate for settle_window.
  bool stop_when_settled = false;
  double settle_rate = 1e-8;
  double settle_window = 10.0;
};

struct TrajectorySample {
  double t = 0.0;
  DensityState state;
  FieldSample field;
};

struct Trajectory {
  SystemParams params;
  IntegratorControl control;
  std::vector<TrajectorySample> samples;
  ode::StepStats stats;
  bool settled = false;

  const TrajectorySample& front() const { return samples.front(); }
  const TrajectorySample& back() const { return samples.back(); }
  std::size_t size() const { return samples.size(); }
};

/// Rotating-wave equations of motion in the bare {|1>, |2>, |3>} basis.
StateDerivative rhs_original(const DensityState& s, const SystemParams& p);

FieldSample field_of(const DensityState& s, const SystemParams& p);

/// Integrates rhs_original from state0 up to t_end (or until settled, see
/// IntegratorControl), sampling every ctrl.dt_out.
///
/// Throws StepSizeUnderflow if the step controller collapses, and
/// InvariantDrift if the trace or the quadratic integral of motion drifts
/// by more than ctrl.invariant_tol at any sample.
Trajectory integrate(const DensityState& state0, const SystemParams& p, double t_end,
                     const IntegratorControl& ctrl = {});

double default_initial_step(const SystemParams& p);

/// Validates tolerances and grid spacing; throws InvalidInput.
void validate_control(const IntegratorControl& ctrl);

using PackedState = ode::State<9>;
PackedState pack(const DensityState& s);
DensityState unpack(const PackedState& y);

}  // namespace vsr
