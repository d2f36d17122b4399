// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <random>

#include "capflow/error.hpp"
#include "capflow/hypgeom.hpp"
#include "doctest.h"

using namespace capflow;
using namespace capflow::hypgeom;

TEST_CASE("radial conversions") {
  CHECK(rho_from_r(0.0) == 0.0);
  CHECK(r_from_rho(std::log(3.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(rho_from_r(1.0), Error);
  CHECK_THROWS_AS(r_from_rho(-0.1), Error);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(0.0, 0.99);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double r = d(rng);
    worst = std::max(worst, std::abs(r_from_rho(rho_from_r(r)) - r));
    // Closed form ln((1+r)/(1-r)).
    CHECK(rho_from_r(r) == doctest::Approx(std::log((1 + r) / (1 - r))).epsilon(1e-13));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("graph potential") {
  const double step = 1e-5;
  const double fd = (graph_potential(1 + step) - graph_potential(1 - step)) / (2 * step);
  CHECK(std::abs(fd - 1 / std::sinh(1.0)) < 1e-8);
  for (double u = -5.0; u <= -0.01; u += 0.0137) {
    CHECK(std::abs(graph_potential(graph_potential_inverse(u)) - u) < 1e-12);
  }
  CHECK(graph_potential(2.0) > graph_potential(1.0));
  CHECK_THROWS_AS(graph_potential(0.0), Error);
  CHECK_THROWS_AS(graph_potential_inverse(0.0), Error);
}

namespace {

// <Y, nu> at the boundary of the cap |x + r0 cos(theta) E| = r0 from Euclidean
// vector algebra in the ball model (the unit normal is conformally rescaled).
double cap_y_dot_nu_cartesian(double theta, double r0, double zeta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double re = r0 * (std::sqrt(c * c * std::cos(zeta) * std::cos(zeta) + s * s) - c * std::cos(zeta));
  const double x1 = re * std::sin(zeta);
  const double x2 = re * std::cos(zeta);  // component along E
  // Euclidean unit normal of the sphere centered at -r0 c E.
  const double n1 = x1 / r0;
  const double n2 = (x2 + r0 * c) / r0;
  const double r2 = x1 * x1 + x2 * x2;
  const double lambda = 2.0 / (1.0 - r2);  // conformal factor
  // Y = 0.5 (1 + |x|^2) E - <x, E> x (Euclidean components)
  const double y1 = -x2 * x1;
  const double y2 = 0.5 * (1 + r2) - x2 * x2;
  // <Y, nu>_hyp = lambda^2 <Y, nu_e / lambda>_euc
  return lambda * (y1 * n1 + y2 * n2);
}

}  // namespace

TEST_CASE("Killing field against the Cartesian oracle on caps") {
  for (double theta : {std::numbers::pi / 6, std::numbers::pi / 3, 1.2}) {
    for (double r0 : {0.3, 0.6, 0.9}) {
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      for (double zeta : {0.0, 0.4, 1.0, std::numbers::pi / 2}) {
        const double root = std::sqrt(c * c * std::cos(zeta) * std::cos(zeta) + s * s);
        const double re = r0 * (root - c * std::cos(zeta));
        const double rho = rho_from_r(re);
        // d re / d zeta and u_zeta = rho_zeta / sinh(rho)
        const double dre = r0 * std::sin(zeta) * (c - c * c * std::cos(zeta) / root);
        const double drho = 2.0 * dre / (1 - re * re);
        const double u_zeta = drho / std::sinh(rho);
        const double omega = std::sqrt(1 + u_zeta * u_zeta);
        CHECK(killing_field_dot_nu(rho, zeta, u_zeta, omega) ==
              doctest::Approx(cap_y_dot_nu_cartesian(theta, r0, zeta)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("Cauchy-Schwarz bound and hyperbolic identity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> rr(0.01, 3.0);
  std::uniform_real_distribution<double> zz(0.0, std::numbers::pi / 2);
  std::normal_distribution<double> gg(0.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const double rho = rr(rng);
    const double zeta = zz(rng);
    const double uz = gg(rng);
    const double extra = gg(rng);
    const double omega = std::sqrt(1 + uz * uz + extra * extra);
    const double y = killing_field_dot_nu(rho, zeta, uz, omega);
    CHECK(y * y <= killing_field_norm_sq(rho, zeta) * (1 + 1e-12));
    const auto b = ambient_bundle(rho, zeta, uz, omega, std::numbers::pi / 2);
    CHECK(std::abs(b.v0 * b.v0 - b.warp * b.warp - 1.0) < 1e-12 * b.v0 * b.v0);
    CHECK(b.vtilde_denom == b.v0);
  }
}

TEST_CASE("axis value of E.nu") {
  const double rho = 0.8;
  const double e_dot_nu = e_field_coefficients(rho, 0.0).first;
  CHECK(e_dot_nu == doctest::Approx(std::pow(std::exp(rho) + 1, 2) / (2 * std::exp(rho))));
  CHECK(e_dot_nu == doctest::Approx(1 + std::cosh(rho)));
}

TEST_CASE("static cap capillary denominator") {
  for (double theta : {std::numbers::pi / 6, std::numbers::pi / 3}) {
    const double r0 = 0.6;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double kappa = (1 + r0 * r0 * s * s) / (2 * r0);
    for (double zeta : {0.0, 0.7, std::numbers::pi / 2}) {
      const double root = std::sqrt(c * c * std::cos(zeta) * std::cos(zeta) + s * s);
      const double re = r0 * (root - c * std::cos(zeta));
      const double rho = rho_from_r(re);
      const double dre = r0 * std::sin(zeta) * (c - c * c * std::cos(zeta) / root);
      const double u_zeta = 2.0 * dre / (1 - re * re) / std::sinh(rho);
      const double omega = std::sqrt(1 + u_zeta * u_zeta);
      const auto b = ambient_bundle(rho, zeta, u_zeta, omega, theta);
      const double support = b.warp / omega;
      CHECK(b.vtilde_denom == doctest::Approx(kappa * support).epsilon(1e-12));
    }
  }
}

TEST_CASE("contact angle helpers") {
  CHECK(contact_cos(std::numbers::pi / 2) == 0.0);
  CHECK(contact_sin(std::numbers::pi / 2) == 1.0);
  CHECK(is_orthogonal(std::numbers::pi / 2));
  CHECK_FALSE(is_orthogonal(1.5));
}
