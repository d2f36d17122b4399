// SPDX-License-Identifier: Apache-2.0
#include "capflow/surface.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "capflow/error.hpp"
#include "capflow/hypgeom.hpp"
#include "capflow/numeric.hpp"
#include "capflow/symfun.hpp"

namespace capflow {

void require_contact_angle(double theta) {
  if (!(theta > 0.0) || !(theta <= std::numbers::pi / 2 + 1e-14)) {
    fail(ErrorKind::usage, "theta out of (0, π/2]");
  }
}

GraphSurface::GraphSurface(HalfSphereGrid grid, std::vector<double> rho, double theta)
    : grid_(std::move(grid)), rho_(std::move(rho)), theta_(theta) {
  require_contact_angle(theta);
  if (rho_.size() != grid_.size()) {
    fail(ErrorKind::validation, "surface has " + std::to_string(rho_.size()) + " values, grid needs " +
                                    std::to_string(grid_.size()));
  }
  for (std::size_t i = 0; i < rho_.size(); ++i) {
    if (!std::isfinite(rho_[i]) || rho_[i] < hypgeom::kRhoMin) {
      fail(ErrorKind::validation, "rho at node " + std::to_string(i) + " is below rho_min or not finite");
    }
  }
}

namespace {

double boundary_slope(double theta, double u_psi) {
  const double c = hypgeom::contact_cos(theta);
  if (c == 0.0) return 0.0;
  return c / hypgeom::contact_sin(theta) * std::sqrt(1.0 + u_psi * u_psi);
}

// Central first and second differences at ext[c] (unscaled).
struct Diff {
  double d1;
  double d2;
};

template <class At>
Diff central(const Stencil& st, At at) {
  const int q = st.half_width();
  double d1 = 0.0;
  double d2 = st.d2()[static_cast<std::size_t>(q)] * at(0);
  for (int o = 1; o <= q; ++o) {
    const double wp = st.d1()[static_cast<std::size_t>(q + o)];
    const double w2 = st.d2()[static_cast<std::size_t>(q + o)];
    d1 += wp * (at(o) - at(-o));
    d2 += w2 * (at(o) + at(-o));
  }
  return {d1, d2};
}

std::vector<NodeJet> jets_axisymmetric(const HalfSphereGrid& grid, std::span<const double> u, double theta,
                                       const Stencil& st) {
  const int m = grid.m();
  const int q = st.half_width();
  const double h = grid.h();
  std::vector<double> ext(static_cast<std::size_t>(m + 1 + 2 * q));
  auto E = [&](int i) -> double& { return ext[static_cast<std::size_t>(i + q)]; };
  for (int i = 0; i <= m; ++i) E(i) = u[static_cast<std::size_t>(i)];
  for (int s = 1; s <= q; ++s) E(-s) = u[static_cast<std::size_t>(s)];
  const double slope = boundary_slope(theta, 0.0);
  if (hypgeom::is_orthogonal(theta)) {
    for (int g = 1; g <= q; ++g) E(m + g) = u[static_cast<std::size_t>(m - g)];
  } else {
    std::vector<double> last(static_cast<std::size_t>(st.extrapolation_points()));
    for (std::size_t t = 0; t < last.size(); ++t) last[t] = u[static_cast<std::size_t>(m) - t];
    for (int g = 1; g <= q; ++g) E(m + g) = st.ghost(g, last.data(), h * slope);
  }

  std::vector<NodeJet> out(static_cast<std::size_t>(m + 1));
  for (int i = 0; i <= m; ++i) {
    const Diff d = central(st, [&](int o) { return E(i + o); });
    NodeJet& j = out[static_cast<std::size_t>(i)];
    j.u_zeta = d.d1 / h;
    j.h_zz = d.d2 / (h * h);
    if (i == 0) {
      j.u_zeta = 0.0;
      j.h_pp = j.h_zz;
    } else if (i == m) {
      j.u_zeta = slope;
      j.h_pp = 0.0;
    } else {
      const double z = grid.zeta(i);
      j.h_pp = std::cos(z) / std::sin(z) * j.u_zeta;
    }
  }
  return out;
}

std::vector<NodeJet> jets_full(const HalfSphereGrid& grid, std::span<const double> u, double theta,
                               const Stencil& st) {
  const int m = grid.m();
  const int N = grid.azimuth();
  const int q = st.half_width();
  const double h = grid.h();
  const double dpsi = grid.dpsi();
  const int rows = m + 1 + 2 * q;
  std::vector<double> E(static_cast<std::size_t>(rows) * static_cast<std::size_t>(N));
  std::vector<double> P(E.size());
  auto wrap = [N](int j) { return ((j % N) + N) % N; };
  auto at = [&](std::vector<double>& a, int i, int j) -> double& {
    return a[static_cast<std::size_t>(i + q) * static_cast<std::size_t>(N) + static_cast<std::size_t>(wrap(j))];
  };

  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j < N; ++j) at(E, i, j) = u[grid.node(i, j)];
  }
  for (int s = 1; s <= q; ++s) {
    for (int j = 0; j < N; ++j) at(E, -s, j) = u[grid.node(s, j + N / 2)];
  }

  auto dpsi_row = [&](int i, int j) {
    return central(st, [&](int o) { return at(E, i, j + o); });
  };

  std::vector<double> slope(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) {
    const double u_psi = dpsi_row(m, j).d1 / dpsi;
    slope[static_cast<std::size_t>(j)] = boundary_slope(theta, u_psi);
  }
  if (hypgeom::is_orthogonal(theta)) {
    for (int g = 1; g <= q; ++g) {
      for (int j = 0; j < N; ++j) at(E, m + g, j) = at(E, m - g, j);
    }
  } else {
    std::vector<double> last(static_cast<std::size_t>(st.extrapolation_points()));
    for (int j = 0; j < N; ++j) {
      for (std::size_t t = 0; t < last.size(); ++t) last[t] = at(E, m - static_cast<int>(t), j);
      for (int g = 1; g <= q; ++g) at(E, m + g, j) = st.ghost(g, last.data(), h * slope[static_cast<std::size_t>(j)]);
    }
  }
  for (int i = -q; i <= m + q; ++i) {
    for (int j = 0; j < N; ++j) at(P, i, j) = dpsi_row(i, j).d1 / dpsi;
  }

  std::vector<NodeJet> out(grid.size());

  // Pole: second differences along the N/2 great circles through it, then a
  // Fourier fit of the gradient and Hessian.
  {
    const int M = N / 2;
    double gx = 0.0, gy = 0.0, mean = 0.0, cc = 0.0, ss = 0.0;
    for (int j = 0; j < M; ++j) {
      const Diff d = central(st, [&](int o) { return at(E, o, j); });
      const double dj = d.d1 / h;
      const double ej = d.d2 / (h * h);
      const double psi = grid.psi(j);
      gx += dj * std::cos(psi);
      gy += dj * std::sin(psi);
      mean += ej;
      cc += ej * std::cos(2 * psi);
      ss += ej * std::sin(2 * psi);
    }
    NodeJet& pj = out[0];
    pj.u_zeta = 2.0 * gx / M;
    pj.u_perp = 2.0 * gy / M;
    mean /= M;
    const double half_diff = 2.0 * cc / M;
    pj.h_zz = mean + half_diff;
    pj.h_pp = mean - half_diff;
    pj.h_zp = 2.0 * ss / M;
  }

  for (int i = 1; i <= m; ++i) {
    const double z = grid.zeta(i);
    const double s = i == m ? 1.0 : std::sin(z);
    const double cot = i == m ? 0.0 : std::cos(z) / s;
    for (int j = 0; j < N; ++j) {
      const Diff dz = central(st, [&](int o) { return at(E, i + o, j); });
      const Diff dp = dpsi_row(i, j);
      const Diff dm = central(st, [&](int o) { return at(P, i + o, j); });
      const double u_z = i == m ? slope[static_cast<std::size_t>(j)] : dz.d1 / h;
      const double u_psi = at(P, i, j);
      const double u_pp = dp.d2 / (dpsi * dpsi);
      const double u_zp = dm.d1 / h;
      NodeJet& nj = out[grid.node(i, j)];
      nj.u_zeta = u_z;
      nj.u_perp = u_psi / s;
      nj.h_zz = dz.d2 / (h * h);
      nj.h_zp = (u_zp - cot * u_psi) / s;
      nj.h_pp = u_pp / (s * s) + cot * u_z;
    }
  }
  return out;
}

// Eigenvalues of the symmetric 2x2 matrix [[a, b], [b, c]].
void sym2_eigen(double a, double b, double c, double& lo, double& hi) {
  const double mid = 0.5 * (a + c);
  const double rad = std::hypot(0.5 * (a - c), b);
  hi = mid + rad;
  lo = mid - rad;
  // Recover the small eigenvalue from the determinant when it cancels.
  const double det = a * c - b * b;
  if (std::abs(lo) < std::abs(hi) && hi != 0.0) lo = det / hi;
}

}  // namespace

std::vector<NodeJet> graph_jets(const HalfSphereGrid& grid, std::span<const double> u, double theta, int fd_order) {
  if (u.size() != grid.size()) fail(ErrorKind::domain, "field size does not match the grid");
  const Stencil st(fd_order);
  if (grid.m() < st.extrapolation_points() + st.half_width()) fail(ErrorKind::domain, "grid too coarse for stencil");
  return grid.mode() == GridMode::axisymmetric ? jets_axisymmetric(grid, u, theta, st) : jets_full(grid, u, theta, st);
}

double GeometryFields::kappa_min() const {
  double v = std::numeric_limits<double>::infinity();
  for (double k : kappa) v = std::min(v, k);
  return v;
}

double GeometryFields::kappa_max() const {
  double v = -std::numeric_limits<double>::infinity();
  for (double k : kappa) v = std::max(v, k);
  return v;
}

GeometryFields geometry(const HalfSphereGrid& grid, std::span<const double> rho, double theta, int fd_order) {
  const std::size_t count = grid.size();
  if (rho.size() != count) fail(ErrorKind::domain, "field size does not match the grid");
  const int n = grid.dim();
  GeometryFields f;
  f.n = n;
  f.theta = theta;
  f.rho.assign(rho.begin(), rho.end());
  f.u.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!(rho[i] >= hypgeom::kRhoMin) || !std::isfinite(rho[i])) {
      fail(ErrorKind::numerical, "rho at node " + std::to_string(i) + " left the admissible range");
    }
    f.u[i] = hypgeom::graph_potential(rho[i]);
  }
  f.jets = graph_jets(grid, f.u, theta, fd_order);

  f.omega.resize(count);
  f.warp.resize(count);
  f.v0.resize(count);
  f.support_v.resize(count);
  f.y_dot_nu.resize(count);
  f.vtilde_denom.resize(count);
  f.vtilde.resize(count);
  f.area_weight.resize(count);
  f.kappa.resize(count * static_cast<std::size_t>(n));
  f.hk.resize(count * static_cast<std::size_t>(n + 1));

  const auto& sw = grid.sphere_weights();
  const bool axisym = grid.mode() == GridMode::axisymmetric;
  for (std::size_t i = 0; i < count; ++i) {
    const NodeJet& j = f.jets[i];
    const double g2 = j.u_zeta * j.u_zeta + j.u_perp * j.u_perp;
    const double omega = std::sqrt(1.0 + g2);
    const double zeta = grid.zeta(grid.ring_of(i));
    const auto amb = hypgeom::ambient_bundle(rho[i], zeta, j.u_zeta, omega, theta);
    f.omega[i] = omega;
    f.warp[i] = amb.warp;
    f.v0[i] = amb.v0;
    f.support_v[i] = amb.warp / omega;
    f.y_dot_nu[i] = amb.y_dot_nu;
    f.vtilde_denom[i] = amb.vtilde_denom;
    f.vtilde[i] = f.support_v[i] / amb.vtilde_denom;
    f.area_weight[i] = std::pow(amb.warp, n) * omega * sw[i];

    const double scale = -1.0 / (omega * amb.warp);
    double* kap = f.kappa.data() + i * static_cast<std::size_t>(n);
    if (axisym) {
      kap[0] = scale * (j.h_zz / (omega * omega) - amb.v0);
      const double kp = scale * (j.h_pp - amb.v0);
      for (int a = 1; a < n; ++a) kap[a] = kp;
    } else {
      // sigma-hat^{1/2} Hess sigma-hat^{1/2} with sigma-hat^{1/2} = I - alpha g g^T.
      const double alpha = 1.0 / (omega * (omega + 1.0));
      const double gx = j.u_zeta;
      const double gy = j.u_perp;
      const double a11 = 1.0 - alpha * gx * gx;
      const double a12 = -alpha * gx * gy;
      const double a22 = 1.0 - alpha * gy * gy;
      // T = A H
      const double t11 = a11 * j.h_zz + a12 * j.h_zp;
      const double t12 = a11 * j.h_zp + a12 * j.h_pp;
      const double t21 = a12 * j.h_zz + a22 * j.h_zp;
      const double t22 = a12 * j.h_zp + a22 * j.h_pp;
      const double s11 = t11 * a11 + t12 * a12;
      const double s12 = 0.5 * ((t11 * a12 + t12 * a22) + (t21 * a11 + t22 * a12));
      const double s22 = t21 * a12 + t22 * a22;
      // kappa = scale (mu - v0): shift before the eigen-solve to keep the small root accurate.
      double lo = 0.0, hi = 0.0;
      sym2_eigen(scale * (s11 - amb.v0), scale * s12, scale * (s22 - amb.v0), lo, hi);
      kap[0] = lo;
      kap[1] = hi;
    }
    const auto e = symfun::sigma_all(std::span<const double>(kap, static_cast<std::size_t>(n)));
    double* H = f.hk.data() + i * static_cast<std::size_t>(n + 1);
    for (int k = 0; k <= n; ++k) H[k] = e[static_cast<std::size_t>(k)] / symfun::binomial(n, k);
  }
  return f;
}

GeometryFields geometry(const GraphSurface& surface, int fd_order) {
  return geometry(surface.grid(), surface.rho(), surface.theta(), fd_order);
}

double BoundaryGeometry::length() const {
  CompensatedSum s;
  for (double w : length_weight) s.add(w);
  return s.value();
}

BoundaryGeometry boundary_geometry(const HalfSphereGrid& grid, const GeometryFields& fields) {
  const int n = grid.dim();
  const double sin_theta = hypgeom::contact_sin(fields.theta);
  BoundaryGeometry b;
  b.n = n;
  b.theta = fields.theta;
  const auto nodes = grid.boundary_nodes();
  for (std::size_t bi = 0; bi < nodes.size(); ++bi) {
    const std::size_t i = nodes[bi];
    const double rho = fields.rho[i];
    b.rho_b.push_back(rho);
    std::vector<double> hh(static_cast<std::size_t>(n - 1));
    if (grid.mode() == GridMode::axisymmetric) {
      // Transverse directions at the equator are tangent to the boundary.
      for (auto& x : hh) x = fields.kappas(i)[1] / sin_theta;
      b.length_weight.push_back(grid.equator_weights()[bi] * std::pow(fields.warp[i], n - 1));
    } else {
      const NodeJet& j = fields.jets[i];
      const double stretch = 1.0 + j.u_perp * j.u_perp;
      const double tangential =
          -(j.h_pp - fields.v0[i] * stretch) / (fields.warp[i] * fields.omega[i] * stretch);
      hh[0] = tangential / sin_theta;
      b.length_weight.push_back(grid.equator_weights()[bi] * fields.warp[i] * std::sqrt(stretch));
    }
    const auto e = symfun::sigma_all(hh);
    for (int k = 0; k <= n - 1; ++k) b.hk.push_back(e[static_cast<std::size_t>(k)] / symfun::binomial(n - 1, k));
    b.hhat.insert(b.hhat.end(), hh.begin(), hh.end());
  }
  return b;
}

BoundaryGeometry boundary_geometry(const GraphSurface& surface, const GeometryFields& fields) {
  return boundary_geometry(surface.grid(), fields);
}

double integrate_bulk(const GeometryFields& fields, std::span<const double> values) {
  if (values.size() != fields.size()) fail(ErrorKind::domain, "integrand size does not match the grid");
  return weighted_sum(fields.area_weight, values);
}

double surface_area(const GeometryFields& fields) {
  CompensatedSum s;
  for (double w : fields.area_weight) s.add(w);
  return s.value();
}

double integrate_curvature(const GeometryFields& fields, int k) {
  if (k < 0 || k > fields.n) fail(ErrorKind::domain, "curvature index out of range");
  CompensatedSum s;
  for (std::size_t i = 0; i < fields.size(); ++i) s.add(fields.area_weight[i] * fields.H(i, k));
  return s.value();
}

double integrate_boundary(const BoundaryGeometry& boundary, std::span<const double> values) {
  if (values.size() != boundary.size()) fail(ErrorKind::domain, "integrand size does not match the boundary");
  return weighted_sum(boundary.length_weight, values);
}

double sinh_power_integral(int p, double rho) {
  if (p < 0) fail(ErrorKind::domain, "negative power");
  if (rho <= 0.0) return 0.0;
  switch (p) {
    case 0:
      return rho;
    case 1: {
      const double s = std::sinh(0.5 * rho);
      return 2.0 * s * s;
    }
    case 2: {
      if (rho < 0.5) {
        // (sinh 2rho - 2rho)/4 by its series.
        const double x = 2.0 * rho;
        double term = x * x * x / 6.0;
        double sum = 0.0;
        for (int k = 1; k < 30 && term > 1e-18 * sum; ++k) {
          sum += term;
          term *= x * x / ((2.0 * k + 2) * (2.0 * k + 3));
        }
        return 0.25 * sum;
      }
      return 0.25 * (std::sinh(2.0 * rho) - 2.0 * rho);
    }
    case 3: {
      const double s = std::sinh(0.5 * rho);
      const double cm1 = 2.0 * s * s;
      return cm1 * cm1 * (cm1 + 3.0) / 3.0;
    }
    default:
      break;
  }
  auto f = [p](double s) { return std::pow(std::sinh(s), p); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, rho, 8, 1e-13);
}

double enclosed_volume(const GraphSurface& surface) {
  const auto& w = surface.grid().sphere_weights();
  CompensatedSum s;
  for (std::size_t i = 0; i < w.size(); ++i) s.add(w[i] * sinh_power_integral(surface.dim(), surface.rho()[i]));
  return s.value();
}

double boundary_enclosed_area(const GraphSurface& surface) {
  const auto& grid = surface.grid();
  const auto nodes = grid.boundary_nodes();
  CompensatedSum s;
  for (std::size_t b = 0; b < nodes.size(); ++b) {
    s.add(grid.equator_weights()[b] * sinh_power_integral(surface.dim() - 1, surface.rho()[nodes[b]]));
  }
  return s.value();
}

double minkowski_residual(const GeometryFields& fields, int k) {
  if (k < 1 || k > fields.n) fail(ErrorKind::domain, "Minkowski index must lie in [1, n]");
  CompensatedSum s;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    s.add(fields.area_weight[i] * (fields.H(i, k - 1) * fields.vtilde_denom[i] - fields.H(i, k) * fields.support_v[i]));
  }
  return s.value();
}

}  // namespace capflow
