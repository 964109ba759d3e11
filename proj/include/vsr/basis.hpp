#pragma once

// Bright/dark basis {|1>, |+>, |->} with
//   |+> = (mu21 |2> + mu31 |3>) / sqrt(2),
//   |-> = (mu21 |3> - mu31 |2>) / sqrt(2).
// Only |+> couples to the ground state; the dark channel does not radiate.

#include <vector>

#include "vsr/dynamics.hpp"
#include "vsr/model.hpp"

namespace vsr {

struct BrightDarkState {
  cplx R_plus1{};
  cplx R_minus1{};
  cplx rho_pm{};  // <+|rho|->; rho_mp = conj(rho_pm)
  double rho11 = 1.0;
  double rho_pp = 0.0;
  double rho_mm = 0.0;
};

using BrightDarkDerivative = BrightDarkState;

BrightDarkState to_bright_dark(const DensityState& s, const SystemParams& p);
DensityState from_bright_dark(const BrightDarkState& bd, const SystemParams& p);

/// Equations of motion written directly in the bright/dark basis.
BrightDarkDerivative rhs_bright_dark(const BrightDarkState& bd, const SystemParams& p);

/// Throws TraceViolation / PositivityViolation.
void validate_bright_dark(const BrightDarkState& bd, double tol = kStateTolerance);

struct BrightDarkSample {
  double t = 0.0;
  BrightDarkState state;
};

/// Integrates rhs_bright_dark on the same grid and controller as
/// integrate(). Serves as an independent route for cross-checks.
std::vector<BrightDarkSample> integrate_bright_dark(const BrightDarkState& bd0, const SystemParams& p,
                                                    double t_end, const IntegratorControl& ctrl = {});

}  // namespace vsr
