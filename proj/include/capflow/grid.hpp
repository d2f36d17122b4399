// SPDX-License-Identifier: Apache-2.0
//
// Uniform grids on the closed upper half-sphere, finite-difference stencils,
// and the quadrature weights used for all surface integrals.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace capflow {

enum class GridMode { axisymmetric, full };

std::string to_string(GridMode mode);
GridMode grid_mode_from_string(const std::string& s);

/// Nodes zeta_i = i*h, h = (pi/2)/m. Axisymmetric grids carry one value per
/// zeta; full grids (n = 2 only) carry a single pole value followed by m rings
/// of `azimuth` equally spaced nodes each.
class HalfSphereGrid {
 public:
  static HalfSphereGrid axisymmetric(int n, int m);
  static HalfSphereGrid full(int m, int azimuth);

  int dim() const { return n_; }
  GridMode mode() const { return mode_; }
  int m() const { return m_; }
  int azimuth() const { return azimuth_; }
  double h() const { return h_; }
  double dpsi() const { return dpsi_; }

  /// Number of stored node values.
  std::size_t size() const;
  /// Storage index of ring i, azimuth j (full mode; the pole maps to 0 for any j).
  std::size_t node(int i, int j) const;
  /// Ring index of a storage index.
  int ring_of(std::size_t idx) const;
  /// Boundary (zeta = pi/2) storage indices.
  std::vector<std::size_t> boundary_nodes() const;

  double zeta(int i) const { return h_ * i; }
  double psi(int j) const { return dpsi_ * j; }

  /// Weights w with sum w_k g_k ~ integral of g over the upper half sphere.
  const std::vector<double>& sphere_weights() const { return sphere_weights_; }
  /// Weights over the boundary S^{n-1}: one entry per boundary node.
  const std::vector<double>& equator_weights() const { return equator_weights_; }

  bool operator==(const HalfSphereGrid& o) const {
    return n_ == o.n_ && mode_ == o.mode_ && m_ == o.m_ && azimuth_ == o.azimuth_;
  }

 private:
  HalfSphereGrid(int n, GridMode mode, int m, int azimuth);

  int n_;
  GridMode mode_;
  int m_;
  int azimuth_;
  double h_;
  double dpsi_;
  std::vector<double> sphere_weights_;
  std::vector<double> equator_weights_;
};

/// Area of the unit sphere S^d.
double unit_sphere_area(int d);

/// Multipliers g_i (i = 0..m) of the end-corrected trapezoid rule:
/// integral over [0, m h] ~ h * sum g_i f_i.
std::vector<double> gregory_weights(int m, int corrections);

/// Central difference weights of even order 2, 4 or 6, plus the boundary
/// extrapolation that imposes a prescribed first derivative at the last node.
class Stencil {
 public:
  explicit Stencil(int order = 6);

  int order() const { return order_; }
  int half_width() const { return order_ / 2; }
  const std::vector<double>& d1() const { return d1_; }
  const std::vector<double>& d2() const { return d2_; }

  /// Ghost value k (1..half_width) beyond the last node, from the last
  /// `extrapolation_points()` values ordered last-first and the derivative
  /// (in grid units, i.e. h * du/dzeta) prescribed at the last node.
  double ghost(int k, const double* last_first, double scaled_derivative) const;
  int extrapolation_points() const { return points_; }

 private:
  int order_;
  int points_;
  std::vector<double> d1_;
  std::vector<double> d2_;
  std::vector<std::vector<double>> ghost_values_;  // [k-1][t]
  std::vector<double> ghost_derivative_;           // [k-1]
};

}  // namespace capflow
