// SPDX-License-Identifier: Apache-2.0
#include "capflow/hypgeom.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "capflow/error.hpp"

namespace capflow::hypgeom {

double rho_from_r(double r) {
  if (!(r >= 0.0 && r < 1.0)) fail(ErrorKind::domain, "ball radius must lie in [0, 1)");
  return 2.0 * std::atanh(r);
}

double r_from_rho(double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) fail(ErrorKind::domain, "hyperbolic radius must be finite and >= 0");
  return std::tanh(0.5 * rho);
}

double graph_potential(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) fail(ErrorKind::domain, "graph potential needs rho > 0");
  return std::log(std::tanh(0.5 * rho));
}

double graph_potential_inverse(double u) {
  if (!(u < 0.0) || !std::isfinite(u)) fail(ErrorKind::domain, "graph potential values are negative");
  return 2.0 * std::atanh(std::exp(u));
}

bool is_orthogonal(double theta) { return std::abs(theta - std::numbers::pi / 2) <= 1e-14; }

double contact_cos(double theta) { return is_orthogonal(theta) ? 0.0 : std::cos(theta); }

double contact_sin(double theta) { return is_orthogonal(theta) ? 1.0 : std::sin(theta); }

FieldCoefficients e_field_coefficients(double rho, double zeta) {
  if (!(rho > 0.0)) fail(ErrorKind::domain, "polar chart is singular at rho = 0");
  // (e^rho + 1)^2 / (2 e^rho) = 1 + cosh rho and (e^rho + 1)/(e^rho - 1) = coth(rho/2)
  return {std::cos(zeta) * (1.0 + std::cosh(rho)), std::sin(zeta) / std::tanh(0.5 * rho)};
}

double killing_field_dot_nu(double rho, double zeta, double u_zeta, double omega) {
  if (!(omega >= 1.0)) fail(ErrorKind::domain, "omega must be >= 1");
  const auto e = e_field_coefficients(rho, zeta);
  const double warp = std::sinh(rho);
  const double r = std::tanh(0.5 * rho);
  const double rho_zeta = warp * u_zeta;
  const double e_dot_nu = (e.first + e.second * rho_zeta) / omega;
  const double x_dot_e = r * std::cos(zeta);
  return 0.5 * (1.0 + r * r) * e_dot_nu - x_dot_e * warp / omega;
}

double killing_field_norm_sq(double rho, double zeta) {
  const double r = std::tanh(0.5 * rho);
  const double d = r * std::cos(zeta);
  const double a = 1.0 + r * r;
  const double b = 1.0 - r * r;
  return (a * a - 4.0 * d * d) / (b * b);
}

AmbientScalars ambient_bundle(double rho, double zeta, double u_zeta, double omega, double theta) {
  AmbientScalars s;
  s.warp = std::sinh(rho);
  s.v0 = std::cosh(rho);
  s.e_coeffs = e_field_coefficients(rho, zeta);
  s.y_dot_nu = killing_field_dot_nu(rho, zeta, u_zeta, omega);
  s.vtilde_denom = s.v0 - contact_cos(theta) * s.y_dot_nu;
  if (!(s.vtilde_denom > 0.0)) {
    fail(ErrorKind::parabolicity,
         "capillary denominator V0 - cos(theta)<Y,nu> = " + std::to_string(s.vtilde_denom) + " is not positive");
  }
  return s;
}

}  // namespace capflow::hypgeom
