// SPDX-License-Identifier: Apache-2.0
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <json.hpp>
#include <numbers>

#include "capflow/flow.hpp"
#include "capflow/grid.hpp"
#include "capflow/hypgeom.hpp"
#include "capflow/inequal.hpp"
#include "capflow/quermass.hpp"
#include "doctest.h"

using namespace capflow;

namespace {

constexpr double kPi = std::numbers::pi;

// W_k of the closed geodesic ball B_rho in H^{n+1}, from dW_k/drho =
// (n+1-k)/(n+1) * |S^n| sinh^{n-k} cosh^k integrated radially.
double closed_ball_quermass(int n, int k, double rho) {
  const double c = static_cast<double>(n + 1 - k) / (n + 1) * unit_sphere_area(n);
  return c * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                 [&](double s) { return std::pow(std::sinh(s), n - k) * std::pow(std::cosh(s), k); }, 0.0, rho, 15,
                 1e-15);
}

GraphSurface hemisphere(int n, int m, double rho0) {
  const auto grid = HalfSphereGrid::axisymmetric(n, m);
  return GraphSurface(grid, std::vector<double>(grid.size(), rho0), kPi / 2);
}

}  // namespace

TEST_CASE("doubled hemispheres match closed geodesic balls") {
  for (int n = 2; n <= 4; ++n) {
    for (double rho0 : {0.5, 1.0}) {
      const auto q = quermass(hemisphere(n, 512, rho0));
      for (int k = 0; k <= n; ++k) {
        const double oracle = closed_ball_quermass(n, k, rho0);
        CHECK(2 * q.W[static_cast<std::size_t>(k)] == doctest::Approx(oracle).epsilon(1e-6));
        CHECK(2 * q.A[static_cast<std::size_t>(k)] == doctest::Approx(oracle).epsilon(1e-6));
      }
    }
    // The top index does not depend on the radius.
    const double a = quermass(hemisphere(n, 128, 0.5)).W.back();
    const double b = quermass(hemisphere(n, 128, 1.0)).W.back();
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
  }
}

TEST_CASE("orthogonal contact collapses A to W") {
  PerturbationSpec spec;
  const auto s = perturbed_cap(kPi / 2, spec, HalfSphereGrid::axisymmetric(3, 64));
  const auto q = quermass(s);
  for (std::size_t k = 0; k < q.A.size(); ++k) CHECK(q.A[k] == q.W[k]);
}

TEST_CASE("n = 2 identities") {
  PerturbationSpec spec;
  spec.seed = 11;
  for (double theta : {kPi / 6, kPi / 3, 1.2}) {
    const auto s = perturbed_cap(theta, spec, HalfSphereGrid::axisymmetric(2, 128));
    const auto q = quermass(s);
    const double sc = std::sin(theta) * std::cos(theta);
    CHECK(q.W[2] == doctest::Approx((q.curvature_integrals[1] - q.volume) / 3).epsilon(1e-13));
    const double closed = (2 * q.curvature_integrals[1] - 2 * q.volume - sc * q.boundary_length) / 6;
    CHECK(std::abs(q.A[2] - closed) < 1e-12 * std::max(1.0, std::abs(q.A[2])));
    CHECK(q.A[2] == doctest::Approx(q.W[2] - sc / 3 * q.WH[1]).epsilon(1e-14));
    CHECK(q.A[1] == doctest::Approx((q.area - std::cos(theta) * q.boundary_area) / 3).epsilon(1e-14));
    CHECK(q.WH[0] == doctest::Approx(q.boundary_area).epsilon(1e-15));
    CHECK(q.WH[1] == doctest::Approx(q.boundary_length / 2).epsilon(1e-15));
    // Gauss-Bonnet for the boundary disc in H^2.
    CHECK(q.WH[2] == doctest::Approx(kPi).epsilon(1e-8));
  }
}

TEST_CASE("capillary combination from the recursion") {
  // n = 3, k + 1 = 3: A_3 = W_3 + c/4 (-(s^2) W^H_2 + (2/(n-2+2)) W^H_0).
  const std::vector<double> W = {1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> WH = {0.5, 0.7, 0.9, 1.1};
  const double theta = 0.9, c = std::cos(theta), s = std::sin(theta);
  const auto A = capillary_quermass(W, WH, theta, 3);
  REQUIRE(A.size() == 4);
  CHECK(A[0] == 1.0);
  CHECK(A[1] == doctest::Approx(2.0 - c / 4 * 0.5).epsilon(1e-15));
  CHECK(A[2] == doctest::Approx(3.0 - c / 4 * s * 0.7).epsilon(1e-15));
  CHECK(A[3] == doctest::Approx(4.0 + c / 4 * (-s * s * 0.9 + 2.0 / 3.0 * 0.5)).epsilon(1e-15));
}

TEST_CASE("boundary quermassintegrals of cap discs") {
  for (double theta : {kPi / 6, kPi / 3}) {
    const auto cap = cap_graph(theta, 0.6, HalfSphereGrid::axisymmetric(2, 256));
    const auto q = quermass(cap);
    const double rho_b = hypgeom::rho_from_r(0.6 * std::sin(theta));
    CHECK(q.WH[0] == doctest::Approx(2 * kPi * (std::cosh(rho_b) - 1)).epsilon(1e-13));
    CHECK(q.WH[1] == doctest::Approx(kPi * std::sinh(rho_b)).epsilon(1e-13));
  }
}

namespace {

// Measured and predicted d/dt A_k after two explicit flow steps from s.
struct VariationPair {
  double measured;
  double predicted;
};

VariationPair first_variation(const GraphSurface& s, int k) {
  FlowConfig config;
  const auto st0 = make_state(s, config);
  const double dt = 0.5 * explicit_step_size(s.grid(), st0.fields, config);
  const auto st1 = step(st0, config, dt);
  const auto st2 = step(st1, config, dt);
  const auto kk = static_cast<std::size_t>(k);
  const double a0 = quermass(st0.surface, st0.fields).A[kk];
  const double a1 = quermass(st1.surface, st1.fields).A[kk];
  const double a2 = quermass(st2.surface, st2.fields).A[kk];
  const auto f = speed(st0.fields);
  std::vector<double> integrand(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) integrand[i] = st0.fields.H(i, k) * f[i];
  const int n = s.dim();
  return {(-3 * a0 + 4 * a1 - a2) / (2 * dt),
          static_cast<double>(n + 1 - k) / (n + 1) * integrate_bulk(st0.fields, integrand)};
}

}  // namespace

TEST_CASE("first variation along the flow") {
  // d/dt A_k = (n+1-k)/(n+1) int H_k f dA for the normal speed f.
  PerturbationSpec spec;
  spec.seed = 3;
  for (int n : {2, 3}) {
    const auto s = perturbed_cap(kPi / 2, spec, HalfSphereGrid::axisymmetric(n, 64));
    for (int k = 0; k < n; ++k) {
      const auto v = first_variation(s, k);
      CHECK(v.measured == doctest::Approx(v.predicted).epsilon(2e-4));
    }
  }
  // For theta < pi/2 generic data miss the first-order compatibility condition at
  // the boundary; the resulting layer makes the discrete rate converge at first order.
  std::vector<double> gap;
  for (int m : {64, 128, 256}) {
    const auto s = perturbed_cap(kPi / 3, spec, HalfSphereGrid::axisymmetric(2, m));
    const auto v0 = first_variation(s, 0);
    CHECK(v0.measured == doctest::Approx(v0.predicted).epsilon(1e-4));
    const auto v1 = first_variation(s, 1);
    gap.push_back(std::abs(v1.measured - v1.predicted));
  }
  CHECK(gap[0] / gap[1] > 1.8);
  CHECK(gap[1] / gap[2] > 1.8);
}

TEST_CASE("first variation along the cap family") {
  // Caps stay capillary as r varies, H_k = kappa^k, and d vol/dr = int f dA.
  for (double theta : {kPi / 6, kPi / 3}) {
    for (int n : {2, 3}) {
      const double r = 0.5, d = 1e-4;
      const auto qp = cap_quermass(n, theta, r + d);
      const auto qm = cap_quermass(n, theta, r - d);
      const double dvol = (qp.A[0] - qm.A[0]) / (2 * d);
      const double kappa = cap_curvature(theta, r);
      for (int k = 1; k <= n; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        const double measured = (qp.A[kk] - qm.A[kk]) / (2 * d);
        const double predicted = static_cast<double>(n + 1 - k) / (n + 1) * std::pow(kappa, k) * dvol;
        CHECK(measured == doctest::Approx(predicted).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("small bodies") {
  const auto a = quermass(hemisphere(2, 64, 1e-3));
  const auto b = quermass(hemisphere(2, 64, 2e-3));
  CHECK(b.W[0] / a.W[0] == doctest::Approx(8.0).epsilon(1e-5));
  CHECK(b.W[1] / a.W[1] == doctest::Approx(4.0).epsilon(1e-5));
  CHECK(b.W[2] / a.W[2] == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("report json") {
  const auto q = quermass(cap_graph(kPi / 3, 0.5, HalfSphereGrid::axisymmetric(2, 32)));
  const auto j = nlohmann::json::parse(to_json(q));
  CHECK(j["n"] == 2);
  CHECK(j["W"].size() == 4);
  CHECK(j["WH"].size() == 3);
  CHECK(j["A"].size() == 3);
  CHECK(j["grid"]["mode"] == "axisymmetric");
  CHECK(j["grid"]["m"] == 32);
  CHECK(j["A"][2].get<double>() == q.A[2]);
}
