#pragma once

// Dimensionless parameterization of the V-type film and the density-matrix
// state. Time is measured in units of the superradiance time tau_R, so
// tau_R == 1 everywhere below except in the physical-unit conversions.

#include <complex>

namespace vsr {

using cplx = std::complex<double>;

/// Positivity tolerance on the Cauchy-Schwarz bounds and the trace.
inline constexpr double kStateTolerance = 1e-9;

struct SystemParams {
  double omega32 = 0.0;  // doublet splitting w3 - w2, 1/tau_R
  double delta_L = 0.0;  // local-field correction magnitude, 1/tau_R
  double mu21 = 1.0;     // d21 / d
  double mu31 = 1.0;     // d31 / d
};

/// Film and medium description in physical units (CGS, seconds).
struct PhysicalInputs {
  double wavelength_c = 0.0;   // central emission wavelength
  double thickness = 0.0;      // film thickness, same length unit
  double dipole21 = 0.0;       // esu*cm
  double dipole31 = 0.0;       // esu*cm
  double concentration = 0.0;  // atoms per unit volume
  double tau0 = 0.0;           // single-emitter spontaneous time, s
  double splitting = 0.0;      // w3 - w2 in rad/s; converted to omega32
};

/// Slowly-varying amplitudes of the single-atom density matrix in the
/// bare basis. rho23 is never stored; it is conj(rho32).
struct DensityState {
  cplx R31{};
  cplx R21{};
  cplx rho32{};
  double rho11 = 1.0;
  double rho22 = 0.0;
  double rho33 = 0.0;

  cplx rho23() const { return std::conj(rho32); }
};

struct ScaledParams {
  SystemParams params;
  double tau_R_seconds = 0.0;
  double k_c_L = 0.0;
};

struct Timescales {
  double tau_R_seconds = 0.0;
  double ratio_to_tau0 = 0.0;
};

/// Reduced Planck constant, erg*s.
inline constexpr double kHbarCgs = 1.054571817e-27;

SystemParams make_params(double omega32, double delta_L, double mu21, double mu31);

/// Converts physical inputs to dimensionless parameters. Requires an
/// ultrathin film (k_c L < 1).
ScaledParams derive_dimensionless(const PhysicalInputs& phys);

/// tau_R = (8 pi / 3) (N0 lambda^3)^-1 (lambda / L) tau0. The thin-film
/// condition is not enforced here.
Timescales estimate_timescales(const PhysicalInputs& phys);

DensityState initial_state(double rho22, double rho33, cplx rho32, cplx R21_0, cplx R31_0);

/// Throws TraceViolation / PositivityViolation if the state is not a
/// physical single-atom density matrix within kStateTolerance.
void validate_state(const DensityState& s, double tol = kStateTolerance);

}  // namespace vsr
