#include "vsr/basis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vsr/error.hpp"

namespace vsr {

namespace {

constexpr cplx kI{0.0, 1.0};

using PackedBd = ode::State<9>;

PackedBd pack_bd(const BrightDarkState& b) {
  return {b.R_plus1.real(), b.R_plus1.imag(), b.R_minus1.real(), b.R_minus1.imag(),
          b.rho_pm.real(),  b.rho_pm.imag(),  b.rho11,           b.rho_pp,
          b.rho_mm};
}

BrightDarkState unpack_bd(const PackedBd& y) {
  BrightDarkState b;
  b.R_plus1 = {y[0], y[1]};
  b.R_minus1 = {y[2], y[3]};
  b.rho_pm = {y[4], y[5]};
  b.rho11 = y[6];
  b.rho_pp = y[7];
  b.rho_mm = y[8];
  return b;
}

}  // namespace

BrightDarkState to_bright_dark(const DensityState& s, const SystemParams& p) {
  const double m21 = p.mu21;
  const double m31 = p.mu31;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

  BrightDarkState b;
  b.R_plus1 = inv_sqrt2 * (m21 * s.R21 + m31 * s.R31);
  b.R_minus1 = inv_sqrt2 * (m21 * s.R31 - m31 * s.R21);
  b.rho_pp = 0.5 * (m21 * m21 * s.rho22 + m31 * m31 * s.rho33 + 2.0 * m21 * m31 * s.rho32.real());
  b.rho_mm = 0.5 * (m21 * m21 * s.rho33 + m31 * m31 * s.rho22 - 2.0 * m21 * m31 * s.rho32.real());
  b.rho_pm = 0.5 * (m21 * m31 * (s.rho33 - s.rho22) + m21 * m21 * s.rho23() - m31 * m31 * s.rho32);
  b.rho11 = s.rho11;
  return b;
}

DensityState from_bright_dark(const BrightDarkState& b, const SystemParams& p) {
  // |2> = a|+> - c|->, |3> = c|+> + a|->, with a = mu21/sqrt2, c = mu31/sqrt2.
  const double a = p.mu21 / std::numbers::sqrt2;
  const double c = p.mu31 / std::numbers::sqrt2;
  const cplx rho_mp = std::conj(b.rho_pm);

  DensityState s;
  s.R21 = a * b.R_plus1 - c * b.R_minus1;
  s.R31 = c * b.R_plus1 + a * b.R_minus1;
  s.rho22 = a * a * b.rho_pp + c * c * b.rho_mm - 2.0 * a * c * b.rho_pm.real();
  s.rho33 = c * c * b.rho_pp + a * a * b.rho_mm + 2.0 * a * c * b.rho_pm.real();
  s.rho32 = a * c * (b.rho_pp - b.rho_mm) - c * c * b.rho_pm + a * a * rho_mp;
  s.rho11 = b.rho11;
  return s;
}

BrightDarkDerivative rhs_bright_dark(const BrightDarkState& b, const SystemParams& p) {
  const double m21 = p.mu21;
  const double m31 = p.mu31;
  const double w = p.omega32;
  const cplx coupling{1.0, -p.delta_L};
  const cplx rho_mp = std::conj(b.rho_pm);
  const double cross = m21 * m31;
  const double asym = m21 * m21 - m31 * m31;
  const double emission = 4.0 * std::norm(b.R_plus1);

  BrightDarkDerivative d;
  d.R_plus1 = -kI * (w / 4.0) * (-asym * b.R_plus1 + 2.0 * cross * b.R_minus1) +
              2.0 * coupling * (b.rho_pp - b.rho11) * b.R_plus1;
  d.rho_pp = (kI * (w / 2.0) * cross * (b.rho_pm - rho_mp)).real() - emission;
  d.rho11 = emission;
  d.R_minus1 = -kI * (w / 4.0) * (asym * b.R_minus1 + 2.0 * cross * b.R_plus1) +
               2.0 * coupling * b.R_plus1 * rho_mp;
  d.rho_pm = kI * (w / 2.0) * (asym * b.rho_pm + cross * (b.rho_pp - b.rho_mm)) -
             2.0 * coupling * b.R_plus1 * std::conj(b.R_minus1);
  d.rho_mm = (kI * (w / 2.0) * cross * (rho_mp - b.rho_pm)).real();
  return d;
}

void validate_bright_dark(const BrightDarkState& b, double tol) {
  const double trace = b.rho11 + b.rho_pp + b.rho_mm;
  if (std::abs(trace - 1.0) > tol) {
    std::ostringstream msg;
    msg << "bright/dark trace = " << trace;
    throw Error(ErrorKind::TraceViolation, msg.str());
  }
  if (std::norm(b.rho_pm) > b.rho_pp * b.rho_mm + tol ||
      std::norm(b.R_plus1) > b.rho_pp * b.rho11 + tol ||
      std::norm(b.R_minus1) > b.rho_mm * b.rho11 + tol) {
    throw Error(ErrorKind::PositivityViolation, "bright/dark coherence exceeds population bound");
  }
}

std::vector<BrightDarkSample> integrate_bright_dark(const BrightDarkState& bd0, const SystemParams& p,
                                                    double t_end, const IntegratorControl& ctrl) {
  if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidInput, "t_end must be > 0");
  validate_control(ctrl);
  validate_bright_dark(bd0);

  std::vector<BrightDarkSample> out;
  out.reserve(static_cast<std::size_t>(t_end / ctrl.dt_out) + 2);

  auto rhs = [&p](double, const PackedBd& y, PackedBd& dy) {
    dy = pack_bd(rhs_bright_dark(unpack_bd(y), p));
  };
  auto observe = [&out](double t, const PackedBd& y) {
    out.push_back({t, unpack_bd(y)});
    return true;
  };

  ode::StepControl step;
  step.rel_tol = ctrl.rel_tol;
  step.abs_tol = ctrl.abs_tol;
  step.initial_step = ctrl.initial_step > 0.0 ? ctrl.initial_step : default_initial_step(p);
  ode::integrate<9>(rhs, pack_bd(bd0), 0.0, t_end, ctrl.dt_out, step, observe);
  return out;
}

}  // namespace vsr
