// SPDX-License-Identifier: Apache-2.0
//
// Poincare-ball coordinates of hyperbolic space and the ambient scalar fields
// entering the capillary flow speed. Points are described by their hyperbolic
// distance rho from the origin and the polar angle zeta from the E_{n+1} axis.
#pragma once

namespace capflow::hypgeom {

/// Smallest admissible hyperbolic radius for grid data (the polar chart is singular at 0).
inline constexpr double kRhoMin = 1e-3;

double rho_from_r(double r);
double r_from_rho(double rho);

/// Phi(rho) = ln tanh(rho/2), an antiderivative of 1/sinh normalized so Phi(inf) = 0.
double graph_potential(double rho);
double graph_potential_inverse(double u);

/// cos(theta) and sin(theta), with the orthogonal angle pi/2 mapped to exactly (0, 1).
double contact_cos(double theta);
double contact_sin(double theta);
bool is_orthogonal(double theta);

/// Coefficients of d/drho and d/dzeta in the constant field E_{n+1}, sign folded
/// so that E_{n+1} = first * d/drho - second * d/dzeta.
struct FieldCoefficients {
  double first = 0.0;
  double second = 0.0;
};

FieldCoefficients e_field_coefficients(double rho, double zeta);

/// <Y_{n+1}, nu> for the graph normal at a point with polar derivative u_zeta of
/// u = Phi(rho) and omega = sqrt(1 + |grad u|^2).
double killing_field_dot_nu(double rho, double zeta, double u_zeta, double omega);

/// <Y_{n+1}, Y_{n+1}> in the hyperbolic metric.
double killing_field_norm_sq(double rho, double zeta);

struct AmbientScalars {
  double warp = 0.0;          // sinh rho
  double v0 = 0.0;            // cosh rho
  double y_dot_nu = 0.0;      // <Y_{n+1}, nu>
  FieldCoefficients e_coeffs;
  double vtilde_denom = 0.0;  // V0 - cos(theta) <Y_{n+1}, nu>
};

/// All ambient scalars of one graph point. Throws parabolicity error if the
/// capillary denominator is not positive.
AmbientScalars ambient_bundle(double rho, double zeta, double u_zeta, double omega, double theta);

}  // namespace capflow::hypgeom
