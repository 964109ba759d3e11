#pragma once

// Test-only reference computations, independent of the library code paths
// they are used to check.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "vsr/model.hpp"
#include "vsr/ode.hpp"

namespace vsr::testing {

/// Random pure single-atom state |psi> = (c1, c2, c3) and its density
/// matrix entries, rho_ab = c_a conj(c_b). Always physical.
inline DensityState random_pure_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::array<cplx, 3> c;
  double norm = 0.0;
  for (auto& x : c) {
    x = {g(rng), g(rng)};
    norm += std::norm(x);
  }
  for (auto& x : c) x /= std::sqrt(norm);
  DensityState s;
  s.rho11 = std::norm(c[0]);
  s.rho22 = std::norm(c[1]);
  s.rho33 = std::norm(c[2]);
  s.R21 = c[1] * std::conj(c[0]);
  s.R31 = c[2] * std::conj(c[0]);
  s.rho32 = c[2] * std::conj(c[1]);
  return s;
}

/// Random valid dipole ratios with mu21^2 + mu31^2 = 2.
inline SystemParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, M_PI / 2);
  std::uniform_real_distribution<double> split(-10.0, 10.0);
  std::uniform_real_distribution<double> lfc(0.0, 5.0);
  const double th = angle(rng);
  return SystemParams{split(rng), lfc(rng), std::sqrt(2.0) * std::cos(th), std::sqrt(2.0) * std::sin(th)};
}

/// Textbook two-level thin-film superradiance in the mean-field picture:
///   R'     = (1/tau - i Delta) (rho_e - rho_g) R
///   rho_g' = (2/tau) |R|^2,  rho_e' = -(2/tau) |R|^2
/// State packing: {Re R, Im R, rho_g, rho_e}.
struct TwoLevelReference {
  double tau;
  double delta;

  void operator()(double, const ode::State<4>& y, ode::State<4>& dy) const {
    const cplx R{y[0], y[1]};
    const cplx dR = cplx{1.0 / tau, -delta} * (y[3] - y[2]) * R;
    const double flow = 2.0 / tau * std::norm(R);
    dy = {dR.real(), dR.imag(), flow, -flow};
  }
};

/// Eigenvalues of the 2x2 linearized coherence system via a general
/// numerical eigensolver.
inline std::array<cplx, 2> linearized_eigenvalues(double omega32, double delta_L, double W) {
  const cplx gW = cplx{1.0, -delta_L} * W;
  Eigen::Matrix2cd m;
  m << cplx{0.0, -omega32 / 2.0} + gW, gW, gW, cplx{0.0, omega32 / 2.0} + gW;
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(m);
  return {es.eigenvalues()[0], es.eigenvalues()[1]};
}

/// Least-squares slope of y against x.
template <class Xs, class Ys>
double fit_slope(const Xs& x, const Ys& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace vsr::testing
