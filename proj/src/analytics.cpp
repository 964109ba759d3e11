#include "vsr/analytics.hpp"

#include <cmath>
#include <sstream>

#include "vsr/basis.hpp"
#include "vsr/error.hpp"

namespace vsr {

namespace {

// ln cosh(x) without overflow for large |x|.
double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

void check_linear_domain(const SystemParams& p, double W) {
  if (std::abs(p.mu21 - p.mu31) > 1e-12) {
    throw Error(ErrorKind::DomainViolation, "linear-stage analysis assumes mu21 == mu31");
  }
  if (!(W > 0.0 && W <= 0.5)) {
    throw Error(ErrorKind::DomainViolation, "W must lie in (0, 0.5]");
  }
  if (!(p.omega32 > 0.0)) {
    throw Error(ErrorKind::DomainViolation, "linear-stage analysis requires omega32 > 0");
  }
}

}  // namespace

InversionResult inversion_condition(const DensityState& state0, const SystemParams& p) {
  const BrightDarkState b = to_bright_dark(state0, p);
  const double Z0 = 0.5 * (b.rho_pp - b.rho11);
  return {Z0, Z0 > 0.0};
}

DegenerateSolution::DegenerateSolution(double Z0, double R0_plus, double delta_L)
    : Z0_(Z0), R0_plus_(R0_plus), delta_L_(delta_L) {
  if (!(Z0 > 0.0)) {
    std::ostringstream msg;
    msg << "Z0 = " << Z0 << "; no inversion between bright and ground states";
    throw Error(ErrorKind::NoInversion, msg.str());
  }
  if (!(R0_plus > 0.0) || !(R0_plus < 1e-3 * Z0)) {
    throw Error(ErrorKind::DomainViolation, "closed form requires 0 < |R+1(0)| < 1e-3 Z0");
  }
  tau_prime_ = 1.0 / (4.0 * Z0);
  t_D_ = tau_prime_ * std::log(2.0 * Z0 / R0_plus);
}

DegenerateValues DegenerateSolution::operator()(double t) const {
  const double x = (t - t_D_) / tau_prime_;
  DegenerateValues v;
  v.Z = -Z0_ * std::tanh(x);
  v.R_plus_abs = Z0_ / std::cosh(x);
  v.phi = 4.0 * Z0_ * delta_L_ * tau_prime_ * (log_cosh(x) - log_cosh(t_D_ / tau_prime_));
  return v;
}

DegenerateSolution degenerate_solution(double Z0, double R0_plus, double delta_L) {
  return DegenerateSolution(Z0, R0_plus, delta_L);
}

double analytic_chirp(double Z0, double delta_L, double t_D, double tau_R_prime, double t) {
  return 4.0 * Z0 * delta_L * std::tanh((t - t_D) / tau_R_prime);
}

RotationYZ population_oscillation(double y0, double z0, double omega32, double t) {
  if (y0 * y0 + z0 * z0 > 1.0 + 1e-12) {
    throw Error(ErrorKind::DomainViolation, "y0^2 + z0^2 must not exceed 1");
  }
  const double c = std::cos(omega32 * t);
  const double s = std::sin(omega32 * t);
  return {y0 * c - z0 * s, z0 * c + y0 * s};
}

LinearRates linear_rates(const SystemParams& p, double W) {
  check_linear_domain(p, W);
  const double w = p.omega32;
  const double dl = p.delta_L;
  const cplx i{0.0, 1.0};

  LinearRates r;
  r.lambda1 = i * (w / 2.0 - dl * W) + W * (1.0 - 2.0 * W * dl / w);
  r.lambda2 = i * (-w / 2.0 - dl * W) + W * (1.0 + 2.0 * W * dl / w);

  // Eigenvalues of [[-i w/2 + gW, gW], [gW, i w/2 + gW]], g = 1 - i Delta_L:
  //   gW +- sqrt((gW)^2 - w^2/4).
  const cplx gW = cplx{1.0, -dl} * W;
  const cplx root = std::sqrt(gW * gW - w * w / 4.0);
  const cplx ev_a = gW + root;
  const cplx ev_b = gW - root;
  // R21 rotates at +w/2, R31 at -w/2.
  if (ev_a.imag() >= ev_b.imag()) {
    r.exact1 = ev_a;
    r.exact2 = ev_b;
  } else {
    r.exact1 = ev_b;
    r.exact2 = ev_a;
  }
  return r;
}

double linearization_weight(const DensityState& s) {
  if (std::abs(s.rho33 - s.rho22) > 1e-12) {
    throw Error(ErrorKind::DomainViolation, "linearization requires rho22(0) == rho33(0)");
  }
  if (std::abs(s.rho32) > 1e-12) {
    throw Error(ErrorKind::DomainViolation, "linearization requires rho32(0) == 0");
  }
  return s.rho33 - s.rho11;
}

double amplitude_ratio(const SystemParams& p, double W, double t) {
  check_linear_domain(p, W);
  return std::exp(4.0 * W * W * (p.delta_L / p.omega32) * t);
}

double critical_lfc(double omega32, double W, double t_D) {
  if (!(omega32 > 0.0) || !(W > 0.0) || !(t_D > 0.0)) {
    throw Error(ErrorKind::DomainViolation, "critical_lfc requires omega32, W, t_D > 0");
  }
  return omega32 / (4.0 * W * W) / t_D;
}

}  // namespace vsr
