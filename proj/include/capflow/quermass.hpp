// SPDX-License-Identifier: Apache-2.0
//
// Quermassintegrals of the enclosed domain, of the boundary body inside the
// support hyperplane, and their capillary combinations.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "capflow/surface.hpp"

namespace capflow {

struct QuermassReport {
  int n = 0;
  double theta = 0.0;
  std::vector<double> W;                    // W_0 .. W_{n+1}
  std::vector<double> WH;                   // W^H_0 .. W^H_n
  std::vector<double> A;                    // A_0 .. A_n
  std::vector<double> curvature_integrals;  // int H_k dA, k = 0..n
  std::vector<double> boundary_curvature_integrals;  // int H_k ds on the boundary, k = 0..n-1
  double volume = 0.0;
  double area = 0.0;
  double boundary_area = 0.0;  // enclosed region of the boundary inside the support plane
  double boundary_length = 0.0;
  // grid metadata
  GridMode mode = GridMode::axisymmetric;
  int m = 0;
  int azimuth = 1;
};

/// W_0 = volume, W_1 = int H_0/(n+1), W_{k+1} = int H_k/(n+1) - k/(n+2-k) W_{k-1}.
std::vector<double> bulk_quermass(double volume, std::span<const double> curvature_integrals, int n);
/// W^H_0 = enclosed area, W^H_1 = int H_0/n, W^H_{k+1} = int H_k/n - k/(n+1-k) W^H_{k-1}.
std::vector<double> boundary_quermass(double enclosed_area, std::span<const double> boundary_curvature_integrals,
                                      int n);
/// A_0 .. A_n from the bulk and boundary quermassintegrals.
std::vector<double> capillary_quermass(std::span<const double> W, std::span<const double> WH, double theta, int n);

QuermassReport quermass(const GraphSurface& surface, const GeometryFields& fields);
QuermassReport quermass(const GraphSurface& surface);

std::string to_json(const QuermassReport& report, int indent = 2);

}  // namespace capflow
