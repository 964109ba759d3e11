#pragma once

#include "vsr/model.hpp"

namespace vsr {

/// rho11 + rho22 + rho33.
double trace_of(const DensityState& s);

/// rho11^2 + rho22^2 + rho33^2 + 2 (|rho32|^2 + |R31|^2 + |R21|^2), i.e.
/// Tr(rho^2). Conserved by the rotating-wave equations; equals 1 for a
/// pure state.
double quadratic_invariant(const DensityState& s);

}  // namespace vsr
