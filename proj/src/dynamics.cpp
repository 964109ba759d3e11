#include "vsr/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vsr/error.hpp"
#include "vsr/invariants.hpp"

namespace vsr {

namespace {
constexpr cplx kI{0.0, 1.0};
}

StateDerivative rhs_original(const DensityState& s, const SystemParams& p) {
  const cplx field = p.mu21 * s.R21 + p.mu31 * s.R31;
  const cplx coupling{1.0, -p.delta_L};  // 1/tau_R - i Delta_L
  const cplx absorb{-1.0, p.delta_L};    // -1/tau_R + i Delta_L
  const double half_split = 0.5 * p.omega32;

  StateDerivative d;
  d.R31 = -kI * half_split * s.R31 +
          coupling * (p.mu31 * (s.rho33 - s.rho11) + p.mu21 * s.rho32) * field;
  d.R21 = kI * half_split * s.R21 +
          coupling * (p.mu21 * (s.rho22 - s.rho11) + p.mu31 * s.rho23()) * field;
  d.rho32 = -kI * p.omega32 * s.rho32 -
            (std::conj(coupling) * p.mu21 * s.R31 * std::conj(field) +
             coupling * p.mu31 * std::conj(s.R21) * field);
  d.rho33 = 2.0 * p.mu31 * (absorb * field * std::conj(s.R31)).real();
  d.rho22 = 2.0 * p.mu21 * (absorb * field * std::conj(s.R21)).real();
  d.rho11 = 2.0 * std::norm(field);
  return d;
}

FieldSample field_of(const DensityState& s, const SystemParams& p) {
  const cplx emitted = p.mu21 * s.R21 + p.mu31 * s.R31;
  return FieldSample{emitted, cplx{p.delta_L, 1.0} * emitted};
}

PackedState pack(const DensityState& s) {
  return {s.R31.real(), s.R31.imag(), s.R21.real(), s.R21.imag(), s.rho32.real(), s.rho32.imag(),
          s.rho11,      s.rho22,      s.rho33};
}

DensityState unpack(const PackedState& y) {
  DensityState s;
  s.R31 = {y[0], y[1]};
  s.R21 = {y[2], y[3]};
  s.rho32 = {y[4], y[5]};
  s.rho11 = y[6];
  s.rho22 = y[7];
  s.rho33 = y[8];
  return s;
}

double default_initial_step(const SystemParams& p) {
  const double period = 2.0 * std::numbers::pi / std::max(std::abs(p.omega32), 1.0);
  return 1e-3 * std::min(period, 1.0);
}

void validate_control(const IntegratorControl& ctrl) {
  if (!(ctrl.rel_tol >= 1e-13 && ctrl.rel_tol <= 1e-6)) {
    throw Error(ErrorKind::InvalidInput, "rel_tol must lie in [1e-13, 1e-6]");
  }
  if (!(ctrl.abs_tol > 0.0) || !(ctrl.invariant_tol > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "abs_tol and invariant_tol must be > 0");
  }
  if (!(ctrl.dt_out > 0.0) || !std::isfinite(ctrl.dt_out)) {
    throw Error(ErrorKind::InvalidInput, "output grid spacing must be > 0");
  }
}

Trajectory integrate(const DensityState& state0, const SystemParams& p, double t_end,
                     const IntegratorControl& ctrl) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorKind::InvalidInput, "t_end must be > 0");
  }
  validate_control(ctrl);
  validate_state(state0);

  Trajectory traj;
  traj.params = p;
  traj.control = ctrl;
  traj.samples.reserve(static_cast<std::size_t>(t_end / ctrl.dt_out) + 2);

  const double q0 = quadratic_invariant(state0);
  const double amp0 = std::abs(field_of(state0, p).emitted_amp);
  bool armed = false;
  double quiet_since = -1.0;

  auto rhs = [&p](double, const PackedState& y, PackedState& dy) {
    const StateDerivative d = rhs_original(unpack(y), p);
    dy = {d.R31.real(), d.R31.imag(), d.R21.real(), d.R21.imag(), d.rho32.real(), d.rho32.imag(),
          d.rho11,      d.rho22,      d.rho33};
  };

  auto observe = [&](double t, const PackedState& y) {
    const DensityState s = unpack(y);
    const double trace_err = std::abs(trace_of(s) - 1.0);
    const double quad_err = std::abs(quadratic_invariant(s) - q0);
    if (trace_err > ctrl.invariant_tol || quad_err > ctrl.invariant_tol) {
      std::ostringstream msg;
      msg << "at t = " << t << ": trace error " << trace_err << ", quadratic invariant drift "
          << quad_err << " (limit " << ctrl.invariant_tol << ")";
      throw Error(ErrorKind::InvariantDrift, msg.str());
    }
    try {
      validate_state(s, std::max(kStateTolerance, ctrl.invariant_tol));
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "at t = " << t << ": " << e.what();
      throw Error(ErrorKind::InvariantDrift, msg.str());
    }

    const FieldSample f = field_of(s, p);
    traj.samples.push_back({t, s, f});

    if (!ctrl.stop_when_settled) return true;
    const double amp = std::abs(f.emitted_amp);
    if (amp0 > 0.0 && amp >= 1e3 * amp0) armed = true;
    if (!armed) return true;
    if (2.0 * amp * amp < ctrl.settle_rate) {
      if (quiet_since < 0.0) quiet_since = t;
      if (t - quiet_since >= ctrl.settle_window) {
        traj.settled = true;
        return false;
      }
    } else {
      quiet_since = -1.0;
    }
    return true;
  };

  ode::StepControl step;
  step.rel_tol = ctrl.rel_tol;
  step.abs_tol = ctrl.abs_tol;
  step.initial_step = ctrl.initial_step > 0.0 ? ctrl.initial_step : default_initial_step(p);

  traj.stats = ode::integrate<9>(rhs, pack(state0), 0.0, t_end, ctrl.dt_out, step, observe);
  return traj;
}

}  // namespace vsr
