// SPDX-License-Identifier: Apache-2.0
//
// Elementary symmetric polynomials of principal curvatures and the curvature
// quotients built from them.
#pragma once

#include <span>
#include <vector>

namespace capflow::symfun {

/// Binomial coefficient as a double; zero outside 0 <= k <= n.
double binomial(int n, int k);

/// sigma_0 .. sigma_n of lambda in one pass (characteristic polynomial coefficients).
std::vector<double> sigma_all(std::span<const double> lambda);

/// k-th elementary symmetric polynomial. sigma_0 = 1, sigma_k = 0 for k > n.
double sigma_k(std::span<const double> lambda, int k);

/// Normalized sigma_k / binomial(n, k).
double h_k(std::span<const double> lambda, int k);

/// sigma_k of lambda with entry i set to zero.
double sigma_k_minor(std::span<const double> lambda, int k, int i);

/// True iff sigma_1 .. sigma_k are all strictly positive.
bool gamma_k_contains(std::span<const double> lambda, int k);

struct CurvatureQuotient {
  int k = 0;
  int l = 0;
  double value = 0.0;
  std::vector<double> gradient;  // dF/dlambda_i

  /// Sum of gradient entries.
  double trace() const;
};

/// F = H_k / H_l with its analytic gradient. Requires lambda in Gamma_k.
CurvatureQuotient quotient_eval(std::span<const double> lambda, int k, int l);

/// (H_r/H_s)^{1/(r-s)} - (H_k/H_l)^{1/(k-l)}; non-negative on Gamma_k.
double newton_maclaurin_gap(std::span<const double> lambda, int k, int l, int r, int s);

}  // namespace capflow::symfun
