// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <vector>

#include "capflow/error.hpp"
#include "capflow/grid.hpp"
#include "doctest.h"

using namespace capflow;

TEST_CASE("grid construction rules") {
  CHECK_THROWS_AS(HalfSphereGrid::axisymmetric(2, 8), Error);
  CHECK_THROWS_AS(HalfSphereGrid::axisymmetric(7, 32), Error);
  CHECK_THROWS_AS(HalfSphereGrid::full(32, 7), Error);
  const auto g = HalfSphereGrid::full(32, 16);
  CHECK(g.size() == 1 + 32 * 16);
  CHECK(g.node(0, 5) == 0);
  CHECK(g.node(3, 16) == g.node(3, 0));
  CHECK(g.ring_of(g.node(7, 3)) == 7);
  CHECK(g.boundary_nodes().size() == 16);
  CHECK(HalfSphereGrid::axisymmetric(3, 20).h() == doctest::Approx(std::numbers::pi / 40));
}

TEST_CASE("hemisphere measure") {
  for (int n = 2; n <= 6; ++n) {
    const auto g = HalfSphereGrid::axisymmetric(n, 128);
    double s = 0.0;
    for (double w : g.sphere_weights()) s += w;
    CHECK(s == doctest::Approx(0.5 * unit_sphere_area(n)).epsilon(1e-12));
  }
  const auto f = HalfSphereGrid::full(64, 32);
  double s = 0.0;
  for (double w : f.sphere_weights()) s += w;
  CHECK(s == doctest::Approx(2 * std::numbers::pi).epsilon(1e-12));
  CHECK(unit_sphere_area(2) == doctest::Approx(4 * std::numbers::pi));
  CHECK(unit_sphere_area(1) == doctest::Approx(2 * std::numbers::pi));
}

TEST_CASE("Gregory rule is exact on low-degree polynomials and high order on smooth data") {
  const int m = 40;
  const auto g = gregory_weights(m, 6);
  const double h = 1.0 / m;
  for (int p = 0; p <= 7; ++p) {
    double s = 0.0;
    for (int i = 0; i <= m; ++i) s += g[static_cast<std::size_t>(i)] * std::pow(i * h, p);
    CHECK(h * s == doctest::Approx(1.0 / (p + 1)).epsilon(1e-12));
  }
  auto err = [](int mm) {
    const auto gg = gregory_weights(mm, 6);
    const double hh = 2.0 / mm;
    double s = 0.0;
    for (int i = 0; i <= mm; ++i) s += gg[static_cast<std::size_t>(i)] * std::exp(std::sin(i * hh));
    return std::abs(hh * s - 4.2365311572210097763);  // int_0^2 exp(sin x) dx
  };
  const double order = std::log2(err(32) / err(64));
  CHECK(order > 6.0);
}

TEST_CASE("stencils differentiate polynomials exactly") {
  for (int order : {2, 4, 6}) {
    Stencil st(order);
    const int q = st.half_width();
    for (int p = 0; p <= order; ++p) {
      double d1 = 0.0;
      double d2 = 0.0;
      for (int o = -q; o <= q; ++o) {
        const double v = std::pow(0.3 + 0.1 * o, p);
        d1 += st.d1()[static_cast<std::size_t>(o + q)] * v;
        d2 += st.d2()[static_cast<std::size_t>(o + q)] * v;
      }
      const double e1 = p >= 1 ? p * std::pow(0.3, p - 1) * 0.1 : 0.0;
      const double e2 = p >= 2 ? p * (p - 1) * std::pow(0.3, p - 2) * 0.01 : 0.0;
      if (p <= order) CHECK(d1 == doctest::Approx(e1).scale(1.0).epsilon(1e-12));
      if (p <= order + 1) CHECK(d2 == doctest::Approx(e2).scale(1.0).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(Stencil(3), Error);
}

TEST_CASE("ghost extrapolation reproduces polynomials with prescribed slope") {
  Stencil st(6);
  const int pts = st.extrapolation_points();
  // P(s) = 1 + 0.5 s - 0.2 s^2 + 0.01 s^6 around the last node s = 0.
  auto P = [](double s) { return 1 + 0.5 * s - 0.2 * s * s + 0.01 * std::pow(s, 6); };
  std::vector<double> last_first(static_cast<std::size_t>(pts));
  for (int t = 0; t < pts; ++t) last_first[static_cast<std::size_t>(t)] = P(-t);
  for (int k = 1; k <= st.half_width(); ++k) {
    CHECK(st.ghost(k, last_first.data(), 0.5) == doctest::Approx(P(k)).epsilon(1e-11));
  }
}
