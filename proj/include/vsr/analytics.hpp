#pragma once

// Closed-form results: the degenerate-doublet pulse, the inversion
// condition, bright/dark population rotation, and the linear-stage growth
// analysis of the nondegenerate doublet.

#include "vsr/model.hpp"

namespace vsr {

struct InversionResult {
  double Z0 = 0.0;  // (rho_pp(0) - rho11(0)) / 2
  bool superradiant = false;
};

InversionResult inversion_condition(const DensityState& state0, const SystemParams& p);

struct DegenerateValues {
  double Z = 0.0;
  double R_plus_abs = 0.0;
  double phi = 0.0;
};

/// Analytic degenerate-doublet (omega32 = 0) solution of the bright channel:
///   Z(t)     = -Z0 tanh((t - t_D) / tau')
///   |R+1|(t) =  Z0 sech((t - t_D) / tau')
///   phi(t)   =  4 Z0 Delta_L tau' [ln cosh((t - t_D)/tau') - ln cosh(t_D/tau')]
/// with tau' = tau_R / (4 Z0) and t_D = tau' ln(2 Z0 / |R+1(0)|).
class DegenerateSolution {
 public:
  /// Throws NoInversion when Z0 <= 0 and DomainViolation unless
  /// 0 < R0_plus < 1e-3 Z0.
  DegenerateSolution(double Z0, double R0_plus, double delta_L);

  double Z0() const { return Z0_; }
  double R0_plus() const { return R0_plus_; }
  double delta_L() const { return delta_L_; }
  double tau_R_prime() const { return tau_prime_; }
  double t_D() const { return t_D_; }

  DegenerateValues operator()(double t) const;

 private:
  double Z0_;
  double R0_plus_;
  double delta_L_;
  double tau_prime_;
  double t_D_;
};

DegenerateSolution degenerate_solution(double Z0, double R0_plus, double delta_L);

/// Instantaneous SR frequency Omega(t) = 4 Z0 Delta_L tanh((t - t_D)/tau').
double analytic_chirp(double Z0, double delta_L, double t_D, double tau_R_prime, double t);

struct RotationYZ {
  double y = 0.0;
  double z = 0.0;
};

/// Free bright/dark exchange: (y, z) rotates at omega32 with
/// z = rho_pp - rho_mm and y = i (rho_pm - rho_mp).
RotationYZ population_oscillation(double y0, double z0, double omega32, double t);

struct LinearRates {
  cplx lambda1{};  // asymptotic exponent of R21
  cplx lambda2{};  // asymptotic exponent of R31
  cplx exact1{};   // eigenvalue of the linearized system on the R21 branch (Im > 0 side)
  cplx exact2{};   // eigenvalue on the R31 branch
};

/// Linear-stage exponents for equal dipoles (mu21 = mu31) and equal
/// doublet populations, W = rho33(0) - rho11(0) in (0, 0.5].
LinearRates linear_rates(const SystemParams& p, double W);

/// W for a state satisfying the linearization assumptions (rho22 = rho33,
/// rho32 = 0); throws DomainViolation otherwise.
double linearization_weight(const DensityState& state0);

/// |R31| / |R21| = exp(4 W^2 (Delta_L / omega32) t) during the linear stage.
double amplitude_ratio(const SystemParams& p, double W, double t);

/// Delta_L^c = (omega32 / 4 W^2) (tau_R / t_D).
double critical_lfc(double omega32, double W, double t_D);

}  // namespace vsr
