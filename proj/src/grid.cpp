// SPDX-License-Identifier: Apache-2.0
#include "capflow/grid.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "capflow/error.hpp"
#include "capflow/symfun.hpp"

namespace capflow {

std::string to_string(GridMode mode) { return mode == GridMode::full ? "full" : "axisymmetric"; }

GridMode grid_mode_from_string(const std::string& s) {
  if (s == "axisymmetric") return GridMode::axisymmetric;
  if (s == "full") return GridMode::full;
  fail(ErrorKind::io, "unknown grid mode '" + s + "'");
}

double unit_sphere_area(int d) {
  const double k = 0.5 * (d + 1);
  return 2.0 * std::pow(std::numbers::pi, k) / std::tgamma(k);
}

std::vector<double> gregory_weights(int m, int corrections) {
  // Gregory coefficients for the end corrections.
  static const double kCoeff[] = {1.0 / 12,         1.0 / 24,           19.0 / 720,
                                  3.0 / 160,        863.0 / 60480,      275.0 / 24192,
                                  33953.0 / 3628800, 8183.0 / 1036800};
  constexpr int kMax = static_cast<int>(sizeof(kCoeff) / sizeof(kCoeff[0]));
  if (corrections < 0 || corrections > kMax) fail(ErrorKind::domain, "unsupported Gregory correction count");
  if (m < 2 * corrections + 1) fail(ErrorKind::domain, "grid too coarse for the requested end corrections");

  std::vector<double> g(static_cast<std::size_t>(m) + 1, 1.0);
  g.front() = 0.5;
  g.back() = 0.5;
  for (int j = 1; j <= corrections; ++j) {
    const double c = kCoeff[j - 1];
    const double sign_left = (j % 2 == 0) ? 1.0 : -1.0;
    for (int t = 0; t <= j; ++t) {
      const double binom = symfun::binomial(j, t);
      // forward difference Delta^j f_0 = sum (-1)^{j-t} C(j,t) f_t
      const double fwd = ((j - t) % 2 == 0 ? 1.0 : -1.0) * binom;
      // backward difference nabla^j f_m = sum (-1)^t C(j,t) f_{m-t}
      const double bwd = (t % 2 == 0 ? 1.0 : -1.0) * binom;
      g[static_cast<std::size_t>(t)] -= c * sign_left * fwd;
      g[static_cast<std::size_t>(m - t)] -= c * bwd;
    }
  }
  return g;
}

HalfSphereGrid HalfSphereGrid::axisymmetric(int n, int m) {
  if (n < 2 || n > 6) fail(ErrorKind::domain, "axisymmetric grids support n in 2..6");
  return HalfSphereGrid(n, GridMode::axisymmetric, m, 1);
}

HalfSphereGrid HalfSphereGrid::full(int m, int azimuth) {
  if (azimuth < 8 || azimuth % 2 != 0) fail(ErrorKind::domain, "full grids need an even azimuth count >= 8");
  return HalfSphereGrid(2, GridMode::full, m, azimuth);
}

HalfSphereGrid::HalfSphereGrid(int n, GridMode mode, int m, int azimuth)
    : n_(n), mode_(mode), m_(m), azimuth_(azimuth), h_(0.0), dpsi_(0.0) {
  if (m < 16) fail(ErrorKind::domain, "grid resolution m must be >= 16");
  h_ = 0.5 * std::numbers::pi / m;
  dpsi_ = 2.0 * std::numbers::pi / azimuth;

  const auto g = gregory_weights(m, 6);
  sphere_weights_.assign(size(), 0.0);
  if (mode_ == GridMode::axisymmetric) {
    const double area = unit_sphere_area(n - 1);
    for (int i = 0; i <= m; ++i) {
      sphere_weights_[static_cast<std::size_t>(i)] =
          area * h_ * g[static_cast<std::size_t>(i)] * std::pow(std::sin(zeta(i)), n - 1);
    }
    equator_weights_.assign(1, area);
  } else {
    for (int i = 1; i <= m; ++i) {
      const double w = h_ * g[static_cast<std::size_t>(i)] * std::sin(zeta(i)) * dpsi_;
      for (int j = 0; j < azimuth; ++j) sphere_weights_[node(i, j)] = w;
    }
    equator_weights_.assign(static_cast<std::size_t>(azimuth), dpsi_);
  }
}

std::size_t HalfSphereGrid::size() const {
  return mode_ == GridMode::axisymmetric ? static_cast<std::size_t>(m_) + 1
                                         : 1 + static_cast<std::size_t>(m_) * static_cast<std::size_t>(azimuth_);
}

std::size_t HalfSphereGrid::node(int i, int j) const {
  if (mode_ == GridMode::axisymmetric) return static_cast<std::size_t>(i);
  if (i == 0) return 0;
  const int jj = ((j % azimuth_) + azimuth_) % azimuth_;
  return 1 + static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(azimuth_) + static_cast<std::size_t>(jj);
}

int HalfSphereGrid::ring_of(std::size_t idx) const {
  if (mode_ == GridMode::axisymmetric) return static_cast<int>(idx);
  if (idx == 0) return 0;
  return 1 + static_cast<int>((idx - 1) / static_cast<std::size_t>(azimuth_));
}

std::vector<std::size_t> HalfSphereGrid::boundary_nodes() const {
  std::vector<std::size_t> out;
  if (mode_ == GridMode::axisymmetric) {
    out.push_back(static_cast<std::size_t>(m_));
  } else {
    for (int j = 0; j < azimuth_; ++j) out.push_back(node(m_, j));
  }
  return out;
}

Stencil::Stencil(int order) : order_(order), points_(order) {
  switch (order) {
    case 2:
      d1_ = {-0.5, 0.0, 0.5};
      d2_ = {1.0, -2.0, 1.0};
      break;
    case 4:
      d1_ = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
      d2_ = {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
      break;
    case 6:
      d1_ = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
      d2_ = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
      break;
    default:
      fail(ErrorKind::domain, "finite-difference order must be 2, 4 or 6");
  }

  // Polynomial P(s) of degree `points_` in s = (zeta - zeta_m)/h through the
  // last `points_` node values, with P'(0) prescribed; ghosts are P(k).
  const int deg = points_;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(deg + 1, deg + 1);
  for (int t = 0; t < points_; ++t) {
    for (int p = 0; p <= deg; ++p) a(t, p) = std::pow(-static_cast<double>(t), p);
  }
  a(points_, 1) = 1.0;
  const Eigen::MatrixXd inv = a.inverse();
  const int q = half_width();
  ghost_values_.assign(static_cast<std::size_t>(q), std::vector<double>(static_cast<std::size_t>(points_)));
  ghost_derivative_.assign(static_cast<std::size_t>(q), 0.0);
  for (int k = 1; k <= q; ++k) {
    Eigen::RowVectorXd ev(deg + 1);
    for (int p = 0; p <= deg; ++p) ev(p) = std::pow(static_cast<double>(k), p);
    const Eigen::RowVectorXd w = ev * inv;
    for (int t = 0; t < points_; ++t) ghost_values_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(t)] = w(t);
    ghost_derivative_[static_cast<std::size_t>(k - 1)] = w(points_);
  }
}

double Stencil::ghost(int k, const double* last_first, double scaled_derivative) const {
  const auto& w = ghost_values_[static_cast<std::size_t>(k - 1)];
  // Differences against the last value keep the cancellation small.
  const double base = last_first[0];
  double acc = 0.0;
  for (int t = 1; t < points_; ++t) acc += w[static_cast<std::size_t>(t)] * (last_first[t] - base);
  return base + acc + ghost_derivative_[static_cast<std::size_t>(k - 1)] * scaled_derivative;
}

}  // namespace capflow
