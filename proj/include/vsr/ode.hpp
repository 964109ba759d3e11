#pragma once

// Adaptive Dormand-Prince 5(4) integrator over fixed-size real state
// vectors. Steps are shortened so that every output-grid time is hit
// exactly; the samples handed to the observer are accepted integration
// points, never interpolated values.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>

#include "vsr/error.hpp"

namespace vsr::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct StepControl {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double initial_step = 1e-3;
  double max_step = std::numeric_limits<double>::infinity();
};

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
};

namespace detail {

// Dormand & Prince (1980) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
// b - b_hat (error weights)
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace detail

/// Integrates y' = rhs(t, y) from t0 to t_end. The observer is invoked as
/// observer(t, y) at t0 and at every grid time t0 + k*dt_out (and t_end);
/// returning false stops the integration early.
///
/// rhs has the signature void(double t, const State<N>& y, State<N>& dydt).
template <std::size_t N, class Rhs, class Observer>
StepStats integrate(Rhs&& rhs, State<N> y, double t0, double t_end, double dt_out,
                    const StepControl& ctrl, Observer&& observer) {
  using namespace detail;
  StepStats stats;
  if (!observer(t0, static_cast<const State<N>&>(y))) return stats;
  if (!(t_end > t0) || !(dt_out > 0.0)) return stats;

  State<N> k1, k2, k3, k4, k5, k6, k7, tmp, y_new;
  rhs(t0, y, k1);
  ++stats.rhs_evals;

  double t = t0;
  double h = std::min({ctrl.initial_step, ctrl.max_step, dt_out});
  std::size_t next_index = 1;
  auto grid_time = [&](std::size_t k) {
    const double tk = t0 + static_cast<double>(k) * dt_out;
    return (t_end - tk <= 1e-9 * dt_out) ? t_end : tk;
  };
  double t_next = grid_time(next_index);

  constexpr double kSafety = 0.9;
  constexpr double kMinFactor = 0.2;
  constexpr double kMaxFactor = 5.0;

  while (t < t_end) {
    const double remaining = t_next - t;
    bool lands_on_grid = false;
    double h_try = std::min(h, ctrl.max_step);
    if (h_try >= remaining * (1.0 - 1e-12)) {
      h_try = remaining;
      lands_on_grid = true;
    }

    const double h_floor = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (h_try < h_floor) {
      std::ostringstream msg;
      msg << "step size " << h_try << " underflowed at t = " << t;
      throw Error(ErrorKind::StepSizeUnderflow, msg.str());
    }

    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h_try * a21 * k1[i];
    rhs(t + c2 * h_try, tmp, k2);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h_try * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h_try, tmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h_try * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h_try, tmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h_try * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h_try, tmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h_try * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(t + h_try, tmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      y_new[i] = y[i] + h_try * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    const double t_new = lands_on_grid ? t_next : t + h_try;
    rhs(t_new, y_new, k7);
    stats.rhs_evals += 6;

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h_try * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = ctrl.abs_tol + ctrl.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err = std::max(err, std::abs(e) / scale);
    }
    if (!std::isfinite(err)) err = std::numeric_limits<double>::max();

    const double factor =
        err == 0.0 ? kMaxFactor : std::clamp(kSafety * std::pow(err, -0.2), kMinFactor, kMaxFactor);

    if (err <= 1.0) {
      ++stats.accepted;
      t = t_new;
      y = y_new;
      k1 = k7;
      // A step clipped to the grid says nothing about the natural step size.
      const double h_next = h_try * factor;
      h = lands_on_grid ? std::max(h, h_next) : h_next;
      if (lands_on_grid) {
        if (!observer(t, static_cast<const State<N>&>(y))) return stats;
        ++next_index;
        t_next = grid_time(next_index);
      }
    } else {
      ++stats.rejected;
      h = h_try * std::min(1.0, factor);
    }
  }
  return stats;
}

}  // namespace vsr::ode
