// SPDX-License-Identifier: Apache-2.0
//
// Star-shaped capillary graphs rho(eta) over the closed upper half-sphere,
// their discrete differential geometry and the surface quadratures.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "capflow/grid.hpp"

namespace capflow {

class GraphSurface {
 public:
  /// Validates sizes, finiteness, rho >= rho_min and theta in (0, pi/2].
  GraphSurface(HalfSphereGrid grid, std::vector<double> rho, double theta);

  const HalfSphereGrid& grid() const { return grid_; }
  const std::vector<double>& rho() const { return rho_; }
  double theta() const { return theta_; }
  int dim() const { return grid_.dim(); }

 private:
  HalfSphereGrid grid_;
  std::vector<double> rho_;
  double theta_;
};

/// Throws a usage error unless theta lies in (0, pi/2].
void require_contact_angle(double theta);

/// First and second covariant derivatives of u = Phi(rho) at one node, in the
/// orthonormal frame (e_zeta, e_psi). In axisymmetric mode h_pp is the common
/// value of the n - 1 transverse Hessian entries. At the full-mode pole the
/// frame is the Cartesian tangent frame with e_zeta along psi = 0.
struct NodeJet {
  double u_zeta = 0.0;
  double u_perp = 0.0;
  double h_zz = 0.0;
  double h_zp = 0.0;
  double h_pp = 0.0;
};

/// Derivatives of a nodal field u with the oblique boundary condition imposed
/// through ghost values at zeta = pi/2.
std::vector<NodeJet> graph_jets(const HalfSphereGrid& grid, std::span<const double> u, double theta,
                                int fd_order = 6);

struct GeometryFields {
  int n = 0;
  double theta = 0.0;
  std::vector<double> rho;
  std::vector<double> u;
  std::vector<double> omega;
  std::vector<double> warp;          // sinh rho
  std::vector<double> v0;            // cosh rho
  std::vector<double> support_v;     // <x, nu> = warp / omega
  std::vector<double> y_dot_nu;      // <Y_{n+1}, nu>
  std::vector<double> vtilde_denom;  // V0 - cos(theta) <Y_{n+1}, nu>
  std::vector<double> vtilde;        // support_v / vtilde_denom
  std::vector<double> area_weight;   // warp^n omega times the sphere weight
  std::vector<NodeJet> jets;
  std::vector<double> kappa;         // n principal curvatures per node
  std::vector<double> hk;            // H_0 .. H_n per node

  std::size_t size() const { return rho.size(); }
  std::span<const double> kappas(std::size_t node) const {
    return {kappa.data() + node * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
  }
  double H(std::size_t node, int k) const { return hk[node * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(k)]; }
  double kappa_min() const;
  double kappa_max() const;
  bool convex() const { return kappa_min() > 0.0; }
};

GeometryFields geometry(const HalfSphereGrid& grid, std::span<const double> rho, double theta, int fd_order = 6);
GeometryFields geometry(const GraphSurface& surface, int fd_order = 6);

struct BoundaryGeometry {
  int n = 0;
  double theta = 0.0;
  std::vector<double> rho_b;          // per boundary node
  std::vector<double> hhat;           // n - 1 values per boundary node
  std::vector<double> length_weight;  // quadrature weight of the boundary measure
  std::vector<double> hk;             // normalized H_0 .. H_{n-1} of hhat per node

  std::size_t size() const { return rho_b.size(); }
  std::span<const double> hhats(std::size_t node) const {
    return {hhat.data() + node * static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n - 1)};
  }
  double H(std::size_t node, int k) const { return hk[node * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)]; }
  double length() const;
};

BoundaryGeometry boundary_geometry(const HalfSphereGrid& grid, const GeometryFields& fields);
BoundaryGeometry boundary_geometry(const GraphSurface& surface, const GeometryFields& fields);

/// Sum over nodes of area_weight * values.
double integrate_bulk(const GeometryFields& fields, std::span<const double> values);
double surface_area(const GeometryFields& fields);
/// Integral of H_k over the surface.
double integrate_curvature(const GeometryFields& fields, int k);
double integrate_boundary(const BoundaryGeometry& boundary, std::span<const double> values);

/// int_0^rho sinh^p(s) ds.
double sinh_power_integral(int p, double rho);
double enclosed_volume(const GraphSurface& surface);
double boundary_enclosed_area(const GraphSurface& surface);

/// int (H_{k-1} Vtilde - H_k v) dA.
double minkowski_residual(const GeometryFields& fields, int k);

/// Euclidean radius of the cap C_{theta,r0} on the ray at polar angle zeta.
double cap_euclidean_radius(double theta, double r0, double zeta);
/// Largest cap parameter r0 admissible inside the unit ball, 1/sin(theta).
double cap_radius_limit(double theta);
/// Curvature of every point of C_{theta,r0}.
double cap_curvature(double theta, double r0);
GraphSurface cap_graph(double theta, double r0, const HalfSphereGrid& grid);

/// Parameters of the smallest cap containing the surface and the largest one
/// contained in it (all caps share the contact angle of the surface).
struct CapBracket {
  double outer = 0.0;
  double inner = 0.0;
  std::size_t outer_node = 0;
  std::size_t inner_node = 0;
};
CapBracket cap_bracket(const GraphSurface& surface);

/// Throws a validation error naming the offending node unless the surface is
/// strictly convex, strictly parabolic, and enclosed by a cap inside the ball
/// (by `r0` when given, otherwise by its smallest enclosing cap).
void validate_capillary(const GraphSurface& surface, std::optional<double> r0 = std::nullopt);

struct PerturbationSpec {
  double r0 = 0.6;
  double epsilon = 0.05;
  int modes = 3;            // polar modes cos(2 j zeta), j = 1..modes
  int azimuthal_modes = 2;  // full mode only
  std::uint64_t seed = 1;
  int max_attempts = 200;
};

/// rho = rho_cap (1 + epsilon P) with a seeded random P that respects the
/// contact-angle condition; resampled until validate_capillary accepts it.
GraphSurface perturbed_cap(double theta, const PerturbationSpec& spec, const HalfSphereGrid& grid);

void write_surface(std::ostream& os, const GraphSurface& surface);
GraphSurface read_surface(std::istream& is);
void save_surface(const std::string& path, const GraphSurface& surface);
GraphSurface load_surface(const std::string& path);

}  // namespace capflow
