// SPDX-License-Identifier: Apache-2.0
#include "capflow/symfun.hpp"

#include <cmath>
#include <string>

#include "capflow/error.hpp"

namespace capflow::symfun {
namespace {

void require_finite(std::span<const double> lambda) {
  if (lambda.empty()) fail(ErrorKind::domain, "symmetric function of an empty vector");
  for (double x : lambda) {
    if (!std::isfinite(x)) fail(ErrorKind::domain, "non-finite curvature entry");
  }
}

void require_order(int k) {
  if (k < 0) fail(ErrorKind::domain, "negative symmetric function order " + std::to_string(k));
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int j = 1; j <= k; ++j) out = out * (n - k + j) / j;
  return std::round(out);
}

std::vector<double> sigma_all(std::span<const double> lambda) {
  require_finite(lambda);
  const std::size_t n = lambda.size();
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k >= 1; --k) e[k] += lambda[j] * e[k - 1];
  }
  return e;
}

double sigma_k(std::span<const double> lambda, int k) {
  require_order(k);
  if (k > static_cast<int>(lambda.size())) {
    require_finite(lambda);
    return 0.0;
  }
  return sigma_all(lambda)[static_cast<std::size_t>(k)];
}

double h_k(std::span<const double> lambda, int k) {
  const int n = static_cast<int>(lambda.size());
  const double s = sigma_k(lambda, k);
  return k > n ? 0.0 : s / binomial(n, k);
}

double sigma_k_minor(std::span<const double> lambda, int k, int i) {
  require_order(k);
  const int n = static_cast<int>(lambda.size());
  if (i < 0 || i >= n) fail(ErrorKind::domain, "minor index out of range");
  std::vector<double> rest(lambda.begin(), lambda.end());
  rest[static_cast<std::size_t>(i)] = 0.0;
  return sigma_k(rest, k);
}

bool gamma_k_contains(std::span<const double> lambda, int k) {
  const auto e = sigma_all(lambda);
  const int n = static_cast<int>(lambda.size());
  if (k < 1 || k > n) fail(ErrorKind::domain, "cone index must lie in [1, n]");
  for (int i = 1; i <= k; ++i) {
    if (!(e[static_cast<std::size_t>(i)] > 0.0)) return false;
  }
  return true;
}

double CurvatureQuotient::trace() const {
  double s = 0.0;
  for (double g : gradient) s += g;
  return s;
}

CurvatureQuotient quotient_eval(std::span<const double> lambda, int k, int l) {
  const int n = static_cast<int>(lambda.size());
  if (!(0 <= l && l < k && k <= n)) fail(ErrorKind::domain, "quotient requires 0 <= l < k <= n");
  if (!gamma_k_contains(lambda, k)) fail(ErrorKind::cone, "curvature vector outside Gamma_k");

  const auto e = sigma_all(lambda);
  const double ck = binomial(n, k);
  const double cl = binomial(n, l);
  const double hk = e[static_cast<std::size_t>(k)] / ck;
  const double hl = e[static_cast<std::size_t>(l)] / cl;
  if (!(hl > 0.0)) fail(ErrorKind::domain, "quotient denominator H_l is not positive");

  CurvatureQuotient q;
  q.k = k;
  q.l = l;
  q.value = hk / hl;
  q.gradient.resize(lambda.size());
  std::vector<double> rest(lambda.begin(), lambda.end());
  for (int i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    rest[idx] = 0.0;
    const auto minor = sigma_all(rest);
    rest[idx] = lambda[idx];
    // d sigma_m / d lambda_i = sigma_{m-1}(lambda | i)
    const double dhk = minor[static_cast<std::size_t>(k - 1)] / ck;
    const double dhl = l >= 1 ? minor[static_cast<std::size_t>(l - 1)] / cl : 0.0;
    q.gradient[idx] = (dhk * hl - hk * dhl) / (hl * hl);
  }
  return q;
}

double newton_maclaurin_gap(std::span<const double> lambda, int k, int l, int r, int s) {
  if (!(k > l && l >= 0 && r > s && s >= 0 && k >= r && l >= s)) {
    fail(ErrorKind::domain, "Newton-Maclaurin indices violate k > l >= 0, r > s >= 0, k >= r, l >= s");
  }
  const int n = static_cast<int>(lambda.size());
  if (k > n) fail(ErrorKind::domain, "Newton-Maclaurin index exceeds dimension");
  if (!gamma_k_contains(lambda, k)) fail(ErrorKind::cone, "curvature vector outside Gamma_k");
  const auto e = sigma_all(lambda);
  auto h = [&](int j) { return e[static_cast<std::size_t>(j)] / binomial(n, j); };
  const double upper = std::pow(h(r) / h(s), 1.0 / (r - s));
  const double lower = std::pow(h(k) / h(l), 1.0 / (k - l));
  return upper - lower;
}

}  // namespace capflow::symfun
