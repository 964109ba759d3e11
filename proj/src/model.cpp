#include "vsr/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vsr/error.hpp"

namespace vsr {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NormalizationViolation: return "NormalizationViolation";
    case ErrorKind::NegativeLfc: return "NegativeLfc";
    case ErrorKind::FilmTooThick: return "FilmTooThick";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::TraceViolation: return "TraceViolation";
    case ErrorKind::PositivityViolation: return "PositivityViolation";
    case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::InvariantDrift: return "InvariantDrift";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::NoInversion: return "NoInversion";
    case ErrorKind::NoPulse: return "NoPulse";
    case ErrorKind::PhaseUnwrapFailure: return "PhaseUnwrapFailure";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_validation_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::StepSizeUnderflow:
    case ErrorKind::InvariantDrift:
    case ErrorKind::NoPulse:
    case ErrorKind::PhaseUnwrapFailure:
    case ErrorKind::IoError:
      return false;
    default:
      return true;
  }
}

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::InvalidInput, std::string(name) + " is not finite");
  }
}

void require_positive(double v, const char* name) {
  require_finite(v, name);
  if (v <= 0.0) throw Error(ErrorKind::InvalidInput, std::string(name) + " must be > 0");
}

void validate_physical(const PhysicalInputs& p) {
  require_positive(p.wavelength_c, "wavelength_c");
  require_positive(p.thickness, "thickness");
  require_positive(p.concentration, "concentration");
  require_positive(p.tau0, "tau0");
  require_finite(p.splitting, "splitting");
}

}  // namespace

SystemParams make_params(double omega32, double delta_L, double mu21, double mu31) {
  require_finite(omega32, "omega32");
  require_finite(delta_L, "delta_L");
  require_finite(mu21, "mu21");
  require_finite(mu31, "mu31");
  if (delta_L < 0.0) throw Error(ErrorKind::NegativeLfc, "delta_L must be >= 0");
  if (mu21 < 0.0 || mu31 < 0.0) {
    throw Error(ErrorKind::InvalidInput, "dipole ratios must be >= 0");
  }
  const double norm = mu21 * mu21 + mu31 * mu31;
  if (std::abs(norm - 2.0) > 1e-12) {
    std::ostringstream msg;
    msg << "mu21^2 + mu31^2 = " << norm << ", expected 2";
    throw Error(ErrorKind::NormalizationViolation, msg.str());
  }
  return SystemParams{omega32, delta_L, mu21, mu31};
}

ScaledParams derive_dimensionless(const PhysicalInputs& phys) {
  validate_physical(phys);
  require_positive(phys.dipole21, "dipole21");
  require_positive(phys.dipole31, "dipole31");

  const double k_c = 2.0 * std::numbers::pi / phys.wavelength_c;
  const double kL = k_c * phys.thickness;
  if (kL >= 1.0) {
    std::ostringstream msg;
    msg << "k_c L = " << kL << " violates the ultrathin condition k_c L < 1";
    throw Error(ErrorKind::FilmTooThick, msg.str());
  }

  const double d2 = 0.5 * (phys.dipole21 * phys.dipole21 + phys.dipole31 * phys.dipole31);
  const double d = std::sqrt(d2);
  const double inv_tau_R = 2.0 * std::numbers::pi * kL * d2 * phys.concentration / kHbarCgs;
  const double tau_R = 1.0 / inv_tau_R;

  // Delta_L * tau_R reduces to 2 / (3 k_c L); use that form so the ratio
  // carries no rounding from the dimensional factors.
  const double delta_L = 2.0 / (3.0 * kL);

  ScaledParams out;
  out.params = SystemParams{phys.splitting * tau_R, delta_L, phys.dipole21 / d, phys.dipole31 / d};
  out.tau_R_seconds = tau_R;
  out.k_c_L = kL;
  return out;
}

Timescales estimate_timescales(const PhysicalInputs& phys) {
  validate_physical(phys);
  const double lam = phys.wavelength_c;
  const double n_lam3 = phys.concentration * lam * lam * lam;
  const double ratio = (8.0 * std::numbers::pi / 3.0) / n_lam3 * (lam / phys.thickness);
  return Timescales{ratio * phys.tau0, ratio};
}

void validate_state(const DensityState& s, double tol) {
  const double vals[] = {s.R31.real(), s.R31.imag(), s.R21.real(), s.R21.imag(),
                         s.rho32.real(), s.rho32.imag(), s.rho11, s.rho22, s.rho33};
  for (double v : vals) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidInput, "state has non-finite entries");
  }
  const double trace = s.rho11 + s.rho22 + s.rho33;
  if (std::abs(trace - 1.0) > tol) {
    std::ostringstream msg;
    msg << "trace = " << trace;
    throw Error(ErrorKind::TraceViolation, msg.str());
  }
  for (double p : {s.rho11, s.rho22, s.rho33}) {
    if (p < -tol || p > 1.0 + tol) {
      std::ostringstream msg;
      msg << "population " << p << " outside [0, 1]";
      throw Error(ErrorKind::PositivityViolation, msg.str());
    }
  }
  auto check = [tol](cplx c, double a, double b, const char* name) {
    if (std::norm(c) > a * b + tol) {
      std::ostringstream msg;
      msg << "|" << name << "|^2 = " << std::norm(c) << " exceeds product of populations " << a * b;
      throw Error(ErrorKind::PositivityViolation, msg.str());
    }
  };
  check(s.rho32, s.rho22, s.rho33, "rho32");
  check(s.R31, s.rho33, s.rho11, "R31");
  check(s.R21, s.rho22, s.rho11, "R21");
}

DensityState initial_state(double rho22, double rho33, cplx rho32, cplx R21_0, cplx R31_0) {
  require_finite(rho22, "rho22");
  require_finite(rho33, "rho33");
  if (rho22 < 0.0 || rho33 < 0.0) {
    throw Error(ErrorKind::PositivityViolation, "initial populations must be >= 0");
  }
  if (rho22 + rho33 > 1.0 + kStateTolerance) {
    throw Error(ErrorKind::TraceViolation, "rho22 + rho33 exceeds 1");
  }
  DensityState s;
  s.rho22 = rho22;
  s.rho33 = rho33;
  s.rho11 = 1.0 - rho22 - rho33;
  s.rho32 = rho32;
  s.R21 = R21_0;
  s.R31 = R31_0;
  validate_state(s);
  return s;
}

}  // namespace vsr
