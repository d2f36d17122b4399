// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "capflow/error.hpp"
#include "capflow/flow.hpp"
#include "doctest.h"

using namespace capflow;

namespace {

constexpr double kPi = std::numbers::pi;

double sup_norm(const std::vector<double>& a) {
  double w = 0.0;
  for (double x : a) w = std::max(w, std::abs(x));
  return w;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double w = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a[i] - b[i]));
  return w;
}

}  // namespace

TEST_CASE("caps are fixed points") {
  FlowConfig config;
  for (double theta : {kPi / 6, kPi / 3, kPi / 2}) {
    for (double r0 : {0.3, 0.6}) {
      const auto cap = cap_graph(theta, r0, HalfSphereGrid::axisymmetric(2, 256));
      const auto st = make_state(cap, config);
      CHECK(sup_norm(speed(st.fields)) <= 1e-8);
      CHECK(sup_norm(rhs(st.fields)) <= 1e-8);
      const auto next = step(st, config);
      CHECK(next.t > 0.0);
      CHECK(sup_diff(next.surface.rho(), cap.rho()) <= 1e-9);
    }
  }
}

TEST_CASE("geodesic spheres are static at orthogonal contact") {
  const auto grid = HalfSphereGrid::axisymmetric(3, 64);
  for (double rho0 : {0.3, 1.5}) {
    const GraphSurface s(grid, std::vector<double>(grid.size(), rho0), kPi / 2);
    CHECK(sup_norm(speed(geometry(s))) < 1e-12);
  }
}

TEST_CASE("speed changes sign and conserves A_n to first order") {
  PerturbationSpec spec;
  for (double theta : {kPi / 6, kPi / 3, kPi / 2}) {
    const auto s = perturbed_cap(theta, spec, HalfSphereGrid::axisymmetric(2, 256));
    const auto fields = geometry(s);
    const auto f = speed(fields);
    CHECK(*std::min_element(f.begin(), f.end()) < 0.0);
    CHECK(*std::max_element(f.begin(), f.end()) > 0.0);
    std::vector<double> hf(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) hf[i] = fields.H(i, 2) * f[i];
    CHECK(std::abs(integrate_bulk(fields, hf)) < 1e-9 * sup_norm(f) * surface_area(fields));
  }
}

TEST_CASE("rhs assembled from cached geometry matches the coordinate expression") {
  PerturbationSpec spec;
  for (double theta : {kPi / 6, kPi / 3, kPi / 2}) {
    for (int n : {2, 3}) {
      spec.seed = static_cast<std::uint64_t>(n);
      const auto s = perturbed_cap(theta, spec, HalfSphereGrid::axisymmetric(n, 128));
      const auto a = rhs(geometry(s));
      const auto b = rhs_coordinate(s.grid(), s.rho(), theta);
      CHECK(sup_diff(a, b) <= 1e-10);
    }
  }
  const auto full = perturbed_cap(kPi / 3, spec, HalfSphereGrid::full(24, 16));
  CHECK(sup_diff(rhs(geometry(full)), rhs_coordinate(full.grid(), full.rho(), kPi / 3)) <= 1e-10);
}

TEST_CASE("orthogonal contact reduces to the closed flow") {
  PerturbationSpec spec;
  const auto s = perturbed_cap(kPi / 2, spec, HalfSphereGrid::axisymmetric(2, 128));
  const auto fields = geometry(s);
  CHECK(sup_diff(rhs(fields), rhs_closed(fields)) <= 1e-10);
  // For theta < pi/2 the capillary term matters.
  const auto t = perturbed_cap(kPi / 3, spec, HalfSphereGrid::axisymmetric(2, 128));
  const auto tf = geometry(t);
  CHECK(sup_diff(rhs(tf), rhs_closed(tf)) > 1e-3);
}

TEST_CASE("rhs is first order in the perturbation size about a sphere") {
  const auto grid = HalfSphereGrid::axisymmetric(2, 128);
  std::vector<double> rates;
  for (double eps : {1e-3, 5e-4}) {
    std::vector<double> rho(grid.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
      const double c = std::cos(grid.zeta(static_cast<int>(i)));
      rho[i] = 0.8 * (1 + eps * 0.5 * (3 * c * c - 1));
    }
    rates.push_back(sup_norm(rhs(geometry(grid, rho, kPi / 2))));
  }
  CHECK(rates[0] / rates[1] == doctest::Approx(2.0).epsilon(2e-3));
}

TEST_CASE("explicit step is fourth order in time") {
  PerturbationSpec spec;
  const auto s = perturbed_cap(kPi / 3, spec, HalfSphereGrid::axisymmetric(2, 32));
  FlowConfig config;
  const auto st = make_state(s, config);
  const double dt = 0.25 * explicit_step_size(s.grid(), st.fields, config);
  auto advance = [&](int pieces) {
    FlowState x = st;
    for (int p = 0; p < pieces; ++p) x = step(x, config, dt / pieces);
    return x.surface.rho();
  };
  const auto y1 = advance(1), y2 = advance(2), y4 = advance(4);
  const double ratio = sup_diff(y1, y2) / sup_diff(y2, y4);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("run from a cap exits immediately") {
  const auto cap = cap_graph(kPi / 3, 0.6, HalfSphereGrid::axisymmetric(2, 128));
  const auto r = run(cap, FlowConfig{});
  CHECK(r.converged);
  CHECK(r.steps == 0);
  CHECK(r.r_star == doctest::Approx(0.6).epsilon(1e-8));
  CHECK(r.cap_distance < 1e-8);
  CHECK_FALSE(r.experimental);
  const auto small = run(cap_graph(0.15, 0.6, HalfSphereGrid::axisymmetric(2, 64)), FlowConfig{});
  CHECK(small.experimental);
  CHECK(nlohmann::json::parse(summary_json(small))["experimental"] == true);
}

TEST_CASE("perturbed caps flow to caps") {
  PerturbationSpec spec;
  FlowConfig config;
  config.monitor_stride = 1;
  for (double theta : {kPi / 6, kPi / 2}) {
    const auto s = perturbed_cap(theta, spec, HalfSphereGrid::axisymmetric(2, 128));
    const auto r = run(s, config);
    CHECK(r.converged);
    CHECK_FALSE(r.aborted);
    CHECK(r.conservation_drift < 1e-6);
    CHECK(r.monotonicity_worst >= -1e-8);
    CHECK(r.F_max_excess <= 1e-6);
    CHECK(r.kappa_min_ratio >= 0.5);
    CHECK(r.barrier_excess <= 1e-12);
    CHECK(r.cap_distance <= 1e-4);
    CHECK(r.r_star > r.r_inner);
    CHECK(r.r_star < r.r_outer);
    REQUIRE(r.final_surface.has_value());
    CHECK(r.samples.back().sup_f < config.stop_speed_tol);
  }
}

TEST_CASE("monitor csv is versioned and deterministic") {
  PerturbationSpec spec;
  const auto s = perturbed_cap(kPi / 3, spec, HalfSphereGrid::axisymmetric(2, 32));
  FlowConfig config;
  config.t_max = 0.5;
  auto csv = [&] {
    const auto r = run(s, config);
    std::ostringstream os;
    write_monitors_csv(os, 2, r.samples);
    return os.str();
  };
  const std::string a = csv();
  CHECK(a == csv());
  std::istringstream is(a);
  std::string line;
  std::getline(is, line);
  CHECK(line == "# capflow monitors v1");
  std::getline(is, line);
  CHECK(line ==
        "t,A_0,A_1,A_2,W_0,W_1,W_2,W_3,WH_0,WH_1,WH_2,sup_f,F_min,F_max,kappa_min,kappa_max,"
        "mink_res_1,mink_res_2,v_min,vtilde_min,vtilde_max,P_min,P_max");
  std::getline(is, line);
  CHECK(std::count(line.begin(), line.end(), ',') == 22);
  const auto r = run(s, config);
  CHECK_FALSE(r.converged);
  CHECK(r.t_final == doctest::Approx(0.5).epsilon(1e-12));
  const auto j = nlohmann::json::parse(summary_json(r));
  CHECK(j["converged"] == false);
}

TEST_CASE("configuration and convexity errors") {
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::numerical;
  };
  FlowConfig c;
  c.dt_safety = 1.5;
  CHECK(kind_of([&] { c.validate(); }) == ErrorKind::usage);
  c = FlowConfig{};
  c.stop_speed_tol = 0.0;
  CHECK(kind_of([&] { c.validate(); }) == ErrorKind::usage);
  c = FlowConfig{};
  c.monitor_stride = 0;
  CHECK(kind_of([&] { c.validate(); }) == ErrorKind::usage);

  // A saddle-shaped dent has principal curvatures of mixed sign.
  const auto cap = cap_graph(kPi / 3, 0.6, HalfSphereGrid::axisymmetric(2, 64));
  auto rho = cap.rho();
  for (int i = 15; i <= 25; ++i) rho[static_cast<std::size_t>(i)] -= 0.03 * std::pow(std::sin(kPi * (i - 15) / 10.0), 2);
  const auto fields = geometry(cap.grid(), rho, cap.theta());
  REQUIRE_FALSE(fields.convex());
  CHECK(kind_of([&] { speed(fields); }) == ErrorKind::convexity);
  const GraphSurface dented(cap.grid(), rho, cap.theta());
  CHECK(kind_of([&] { run(dented, FlowConfig{}); }) == ErrorKind::validation);
}
