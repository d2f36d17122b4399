// SPDX-License-Identifier: Apache-2.0
//
// Cap reference functions f_k(r) = A_k(cap C_{theta,r}), their inverses, and
// checkers for the Alexandrov-Fenchel and Minkowski-type inequalities.
#pragma once

#include <string>
#include <vector>

#include "capflow/quermass.hpp"
#include "capflow/surface.hpp"

namespace capflow {

inline constexpr int kReferenceResolution = 1024;

/// Quermass report of the cap C_{theta,r} on an axisymmetric grid with exact
/// constant curvature; only area and volume are quadratures.
QuermassReport cap_quermass(int n, double theta, double r, int m_ref = kReferenceResolution);
double cap_reference(int n, double theta, double r, int k, int m_ref = kReferenceResolution);
/// r with f_k(r) = target, by bisection to relative 1e-12.
double cap_reference_inverse(int n, double theta, int k, double target, int m_ref = kReferenceResolution);

struct CapTable {
  int n = 0;
  double theta = 0.0;
  std::vector<double> r;
  std::vector<std::vector<double>> f;  // f[k][i] for k = 0..n
  bool strictly_increasing() const;
};

CapTable cap_table(int n, double theta, double r_min, double r_max, int samples,
                   int m_ref = kReferenceResolution);
std::string to_csv(const CapTable& table);

struct AfSlack {
  int k = 0;
  double A_k = 0.0;
  double r_k = 0.0;  // f_k^{-1}(A_k)
  double bound = 0.0;  // f_n(r_k)
  double slack = 0.0;  // A_n - bound
  bool pass = false;
};

struct AfReport {
  int n = 0;
  double theta = 0.0;
  double tolerance = 1e-8;
  double A_n = 0.0;
  std::vector<AfSlack> slacks;
  double curvature_spread = 0.0;  // (kappa_max - kappa_min) / kappa_mean
  bool equality_candidate = false;
  bool pass = false;
};

AfReport check_af(const GraphSurface& surface, double tolerance = 1e-8);
std::string to_json(const AfReport& report, int indent = 2);

struct MinkowskiN2Report {
  double theta = 0.0;
  double tolerance = 1e-8;
  double mean_curvature_integral = 0.0;  // int H dA with H = kappa_1 + kappa_2
  double volume = 0.0;
  double boundary_length = 0.0;
  double r1 = 0.0;
  double bound = 0.0;  // 2|vol| + 6 f_2(f_1^{-1}(A_1)) + sin cos |boundary|
  double gap = 0.0;
  double af_slack = 0.0;  // A_2 - f_2(f_1^{-1}(A_1))
  bool pass = false;
};

MinkowskiN2Report check_minkowski_n2(const GraphSurface& surface, double tolerance = 1e-8);
std::string to_json(const MinkowskiN2Report& report, int indent = 2);

/// Residuals int (H_{k-1} Vtilde - H_k v) dA for k = 1..n, scaled by the area.
struct MinkowskiReport {
  int n = 0;
  double theta = 0.0;
  double area = 0.0;
  std::vector<double> residuals;
  std::vector<double> relative;
};
MinkowskiReport minkowski_report(const GraphSurface& surface);
std::string to_json(const MinkowskiReport& report, int indent = 2);

}  // namespace capflow
