// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "capflow/error.hpp"
#include "capflow/hypgeom.hpp"
#include "capflow/surface.hpp"

namespace capflow {
namespace {

// Shape factor of C_{theta,r0}: r_e(zeta) = r0 * cap_shape(theta, zeta).
double cap_shape(double theta, double zeta) {
  const double c = hypgeom::contact_cos(theta);
  const double s = hypgeom::contact_sin(theta);
  const double cz = std::cos(zeta);
  const double root = std::sqrt(c * c * cz * cz + s * s);
  // root - c cz, rewritten to avoid cancellation when c cz ~ root
  return s * s / (root + c * cz);
}

// d rho / d zeta of the cap graph.
double cap_rho_slope(double theta, double r0, double zeta) {
  const double c = hypgeom::contact_cos(theta);
  const double s = hypgeom::contact_sin(theta);
  const double cz = std::cos(zeta);
  const double root = std::sqrt(c * c * cz * cz + s * s);
  const double re = r0 * cap_shape(theta, zeta);
  const double dre = r0 * std::sin(zeta) * c * (1.0 - c * cz / root);
  return 2.0 * dre / (1.0 - re * re);
}

std::string node_label(const HalfSphereGrid& grid, std::size_t idx) {
  std::ostringstream os;
  os << "node " << idx << " (zeta=" << grid.zeta(grid.ring_of(idx));
  if (grid.mode() == GridMode::full && idx > 0) {
    os << ", psi=" << grid.psi(static_cast<int>((idx - 1) % static_cast<std::size_t>(grid.azimuth())));
  }
  os << ")";
  return os.str();
}

// C-infinity step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x) {
  auto g = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double a = g(x);
  const double b = g(1.0 - x);
  return a / (a + b);
}

}  // namespace

double cap_euclidean_radius(double theta, double r0, double zeta) { return r0 * cap_shape(theta, zeta); }

double cap_radius_limit(double theta) { return 1.0 / hypgeom::contact_sin(theta); }

double cap_curvature(double theta, double r0) {
  const double s = hypgeom::contact_sin(theta);
  return (1.0 + r0 * r0 * s * s) / (2.0 * r0);
}

GraphSurface cap_graph(double theta, double r0, const HalfSphereGrid& grid) {
  require_contact_angle(theta);
  if (!(r0 > 0.0) || !(r0 < cap_radius_limit(theta))) {
    fail(ErrorKind::domain, "cap parameter r0 must lie in (0, 1/sin(theta))");
  }
  std::vector<double> rho(grid.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    rho[i] = hypgeom::rho_from_r(cap_euclidean_radius(theta, r0, grid.zeta(grid.ring_of(i))));
  }
  return GraphSurface(grid, std::move(rho), theta);
}

CapBracket cap_bracket(const GraphSurface& surface) {
  const auto& grid = surface.grid();
  CapBracket b;
  b.outer = 0.0;
  b.inner = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double ratio = hypgeom::r_from_rho(surface.rho()[i]) / cap_shape(surface.theta(), grid.zeta(grid.ring_of(i)));
    if (ratio > b.outer) {
      b.outer = ratio;
      b.outer_node = i;
    }
    if (ratio < b.inner) {
      b.inner = ratio;
      b.inner_node = i;
    }
  }
  return b;
}

void validate_capillary(const GraphSurface& surface, std::optional<double> r0) {
  const auto& grid = surface.grid();
  const double limit = cap_radius_limit(surface.theta());
  const auto bracket = cap_bracket(surface);
  if (r0) {
    if (!(*r0 > 0.0 && *r0 < limit)) fail(ErrorKind::validation, "enclosing cap parameter must lie in (0, 1/sin(theta))");
    if (bracket.outer > *r0 * (1.0 + 1e-12)) {
      fail(ErrorKind::validation, "surface leaves the cap C_{theta,r0} at " + node_label(grid, bracket.outer_node));
    }
  } else if (!(bracket.outer < limit)) {
    fail(ErrorKind::validation, "no enclosing cap inside the ball; worst " + node_label(grid, bracket.outer_node));
  }

  GeometryFields f;
  try {
    f = geometry(surface);
  } catch (const Error& e) {
    fail(ErrorKind::validation, std::string("geometry rejected: ") + e.what());
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (double k : f.kappas(i)) {
      if (!(k > 0.0)) fail(ErrorKind::validation, "surface is not strictly convex at " + node_label(grid, i));
    }
  }
  const auto b = boundary_geometry(surface, f);
  const auto nodes = grid.boundary_nodes();
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (double k : b.hhats(i)) {
      if (!(k > 0.0)) fail(ErrorKind::validation, "boundary is not convex at " + node_label(grid, nodes[i]));
    }
  }
}

GraphSurface perturbed_cap(double theta, const PerturbationSpec& spec, const HalfSphereGrid& grid) {
  require_contact_angle(theta);
  if (spec.modes < 1 || spec.azimuthal_modes < 0) fail(ErrorKind::usage, "perturbation mode counts must be positive");
  if (!(spec.epsilon >= 0.0 && spec.epsilon < 0.5)) fail(ErrorKind::usage, "perturbation epsilon must lie in [0, 0.5)");
  const GraphSurface cap = cap_graph(theta, spec.r0, grid);
  if (spec.epsilon == 0.0) return cap;

  const bool full = grid.mode() == GridMode::full;
  const int lmax = full ? spec.azimuthal_modes : 0;
  const double cot = hypgeom::contact_cos(theta) / hypgeom::contact_sin(theta);
  const double half_pi = 0.5 * std::numbers::pi;
  const double rho_cb = hypgeom::rho_from_r(cap_euclidean_radius(theta, spec.r0, half_pi));
  const double rho_cb_slope = cap_rho_slope(theta, spec.r0, half_pi);

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::string last_reason;
  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    std::vector<double> a(static_cast<std::size_t>(spec.modes));
    std::vector<double> bc(static_cast<std::size_t>(2 * lmax));
    double total = 0.0;
    for (auto& x : a) {
      x = coeff(rng);
      total += std::abs(x);
    }
    for (auto& x : bc) {
      x = coeff(rng);
      total += std::abs(x);
    }
    for (auto& x : a) x /= total;
    for (auto& x : bc) x /= total;

    auto modes_value = [&](double zeta, double psi) {
      double p = 0.0;
      for (int j = 1; j <= spec.modes; ++j) p += a[static_cast<std::size_t>(j - 1)] * std::cos(2.0 * j * zeta);
      for (int l = 1; l <= lmax; ++l) {
        const double sl = std::pow(std::sin(zeta), l);
        p += sl * (bc[static_cast<std::size_t>(2 * l - 2)] * std::cos(l * psi) +
                   bc[static_cast<std::size_t>(2 * l - 1)] * std::sin(l * psi));
      }
      return p;
    };
    auto modes_dpsi_boundary = [&](double psi) {
      double p = 0.0;
      for (int l = 1; l <= lmax; ++l) {
        p += l * (-bc[static_cast<std::size_t>(2 * l - 2)] * std::sin(l * psi) +
                  bc[static_cast<std::size_t>(2 * l - 1)] * std::cos(l * psi));
      }
      return p;
    };
    // Correction profile w with w(pi/2) = 0 and w'(pi/2) = 1; in full mode it
    // vanishes near the pole so an azimuth-dependent amplitude stays smooth.
    auto correction = [&](double zeta) {
      const double w = -std::cos(zeta);
      return full ? w * smooth_step((zeta - std::numbers::pi / 6) / (std::numbers::pi / 6)) : w;
    };
    // Amplitude making rho_zeta = cot(theta) sinh(rho) sqrt(1 + u_psi^2) hold at the boundary.
    auto beta = [&](double psi) {
      const double gb = 1.0 + spec.epsilon * modes_value(half_pi, psi);
      const double rho_b = rho_cb * gb;
      const double u_psi = rho_cb * spec.epsilon * modes_dpsi_boundary(psi) / std::sinh(rho_b);
      const double target = cot * std::sinh(rho_b) * std::sqrt(1.0 + u_psi * u_psi);
      return (target - rho_cb_slope * gb) / (rho_cb * spec.epsilon);
    };

    std::vector<double> rho(grid.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
      const int ring = grid.ring_of(i);
      const double zeta = grid.zeta(ring);
      const double psi = (full && i > 0) ? grid.psi(static_cast<int>((i - 1) % static_cast<std::size_t>(grid.azimuth()))) : 0.0;
      const double p = modes_value(zeta, psi) + beta(psi) * correction(zeta);
      rho[i] = cap.rho()[i] * (1.0 + spec.epsilon * p);
    }
    try {
      GraphSurface s(grid, std::move(rho), theta);
      validate_capillary(s);
      return s;
    } catch (const Error& e) {
      last_reason = e.what();
    }
  }
  fail(ErrorKind::validation, "no admissible perturbation after " + std::to_string(spec.max_attempts) +
                                  " attempts; last: " + last_reason);
}

}  // namespace capflow
