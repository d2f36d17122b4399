// SPDX-License-Identifier: Apache-2.0
#include "capflow/inequal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "capflow/error.hpp"
#include "capflow/hypgeom.hpp"
#include "capflow/numeric.hpp"

namespace capflow {
namespace {

void require_cap_parameter(double theta, double r) {
  require_contact_angle(theta);
  if (!(r > 0.0 && r < cap_radius_limit(theta))) fail(ErrorKind::domain, "cap parameter r out of (0, 1/sin(theta))");
}

}  // namespace

QuermassReport cap_quermass(int n, double theta, double r, int m_ref) {
  require_cap_parameter(theta, r);
  const auto grid = HalfSphereGrid::axisymmetric(n, m_ref);
  const double c = hypgeom::contact_cos(theta);
  const double s = hypgeom::contact_sin(theta);
  const double kappa = cap_curvature(theta, r);

  // Area with the analytic slope of the cap graph.
  const auto& w = grid.sphere_weights();
  CompensatedSum area;
  CompensatedSum volume;
  double rho_b = 0.0;
  for (int i = 0; i <= grid.m(); ++i) {
    const double z = grid.zeta(i);
    const double cz = std::cos(z);
    const double root = std::sqrt(c * c * cz * cz + s * s);
    const double re = cap_euclidean_radius(theta, r, z);
    const double dre = r * std::sin(z) * c * (1.0 - c * cz / root);
    const double rho = hypgeom::rho_from_r(re);
    // u_zeta = rho_zeta / sinh(rho) with sinh(rho) = 2 re / (1 - re^2)
    const double u_zeta = dre / re;
    const double omega = std::sqrt(1.0 + u_zeta * u_zeta);
    area.add(w[static_cast<std::size_t>(i)] * std::pow(std::sinh(rho), n) * omega);
    volume.add(w[static_cast<std::size_t>(i)] * sinh_power_integral(n, rho));
    if (i == grid.m()) rho_b = rho;
  }

  QuermassReport q;
  q.n = n;
  q.theta = theta;
  q.mode = GridMode::axisymmetric;
  q.m = m_ref;
  q.azimuth = 1;
  q.volume = volume.value();
  q.area = area.value();
  for (int k = 0; k <= n; ++k) q.curvature_integrals.push_back(std::pow(kappa, k) * q.area);

  // The boundary is the geodesic sphere of radius rho_b in the support plane.
  q.boundary_length = unit_sphere_area(n - 1) * std::pow(std::sinh(rho_b), n - 1);
  q.boundary_area = unit_sphere_area(n - 1) * sinh_power_integral(n - 1, rho_b);
  const double hhat = 1.0 / std::tanh(rho_b);
  for (int k = 0; k <= n - 1; ++k) q.boundary_curvature_integrals.push_back(std::pow(hhat, k) * q.boundary_length);

  q.W = bulk_quermass(q.volume, q.curvature_integrals, n);
  q.WH = boundary_quermass(q.boundary_area, q.boundary_curvature_integrals, n);
  q.A = capillary_quermass(q.W, q.WH, theta, n);
  return q;
}

double cap_reference(int n, double theta, double r, int k, int m_ref) {
  if (k < 0 || k > n) fail(ErrorKind::domain, "quermass index out of range");
  return cap_quermass(n, theta, r, m_ref).A[static_cast<std::size_t>(k)];
}

double cap_reference_inverse(int n, double theta, int k, double target, int m_ref) {
  require_contact_angle(theta);
  if (k < 0 || k > n) fail(ErrorKind::domain, "quermass index out of range");
  const double limit = cap_radius_limit(theta);
  double lo = 1e-9 * limit;
  double hi = limit * (1.0 - 1e-9);
  const double f_lo = cap_reference(n, theta, lo, k, m_ref);
  const double f_hi = cap_reference(n, theta, hi, k, m_ref);
  if (!(target > f_lo && target < f_hi)) {
    fail(ErrorKind::domain, "target outside the range of the cap reference function");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cap_reference(n, theta, mid, k, m_ref) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool CapTable::strictly_increasing() const {
  for (const auto& col : f) {
    for (std::size_t i = 1; i < col.size(); ++i) {
      if (!(col[i] > col[i - 1])) return false;
    }
  }
  return true;
}

CapTable cap_table(int n, double theta, double r_min, double r_max, int samples, int m_ref) {
  require_cap_parameter(theta, r_min);
  require_cap_parameter(theta, r_max);
  if (samples < 2 || !(r_max > r_min)) fail(ErrorKind::usage, "cap table needs r_min < r_max and >= 2 samples");
  CapTable t;
  t.n = n;
  t.theta = theta;
  t.f.assign(static_cast<std::size_t>(n + 1), {});
  for (int i = 0; i < samples; ++i) {
    const double r = r_min + (r_max - r_min) * i / (samples - 1);
    const auto q = cap_quermass(n, theta, r, m_ref);
    t.r.push_back(r);
    for (int k = 0; k <= n; ++k) t.f[static_cast<std::size_t>(k)].push_back(q.A[static_cast<std::size_t>(k)]);
  }
  return t;
}

std::string to_csv(const CapTable& t) {
  std::ostringstream os;
  os << "r";
  for (int k = 0; k <= t.n; ++k) os << ",f_" << k;
  os << '\n';
  char buf[40];
  for (std::size_t i = 0; i < t.r.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", t.r[i]);
    os << buf;
    for (const auto& col : t.f) {
      std::snprintf(buf, sizeof buf, "%.17g", col[i]);
      os << ',' << buf;
    }
    os << '\n';
  }
  return os.str();
}

AfReport check_af(const GraphSurface& surface, double tolerance) {
  const int n = surface.dim();
  const auto fields = geometry(surface);
  const auto q = quermass(surface, fields);
  AfReport rep;
  rep.n = n;
  rep.theta = surface.theta();
  rep.tolerance = tolerance;
  rep.A_n = q.A[static_cast<std::size_t>(n)];
  const double scale = std::max(1.0, std::abs(rep.A_n));
  rep.pass = true;
  for (int k = 1; k <= n - 1; ++k) {
    AfSlack s;
    s.k = k;
    s.A_k = q.A[static_cast<std::size_t>(k)];
    s.r_k = cap_reference_inverse(n, rep.theta, k, s.A_k);
    s.bound = cap_reference(n, rep.theta, s.r_k, n);
    s.slack = rep.A_n - s.bound;
    s.pass = s.slack >= -tolerance * scale;
    rep.pass = rep.pass && s.pass;
    rep.slacks.push_back(s);
  }
  const double kmin = fields.kappa_min();
  const double kmax = fields.kappa_max();
  rep.curvature_spread = (kmax - kmin) / (0.5 * (kmax + kmin));
  bool tiny = true;
  for (const auto& s : rep.slacks) tiny = tiny && std::abs(s.slack) <= tolerance * scale;
  rep.equality_candidate = tiny && rep.curvature_spread < 1e-4;
  return rep;
}

std::string to_json(const AfReport& r, int indent) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["theta"] = r.theta;
  j["tolerance"] = r.tolerance;
  j["A_n"] = r.A_n;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : r.slacks) {
    arr.push_back({{"k", s.k}, {"A_k", s.A_k}, {"r_k", s.r_k}, {"bound", s.bound}, {"slack", s.slack}, {"pass", s.pass}});
  }
  j["slacks"] = arr;
  j["curvature_spread"] = r.curvature_spread;
  j["equality_candidate"] = r.equality_candidate;
  j["pass"] = r.pass;
  return j.dump(indent);
}

MinkowskiN2Report check_minkowski_n2(const GraphSurface& surface, double tolerance) {
  if (surface.dim() != 2) fail(ErrorKind::usage, "the Minkowski-type inequality check supports n = 2 only");
  const auto fields = geometry(surface);
  const auto q = quermass(surface, fields);
  MinkowskiN2Report r;
  r.theta = surface.theta();
  r.tolerance = tolerance;
  r.mean_curvature_integral = 2.0 * q.curvature_integrals[1];
  r.volume = q.volume;
  r.boundary_length = q.boundary_length;
  r.r1 = cap_reference_inverse(2, r.theta, 1, q.A[1]);
  const double f2 = cap_reference(2, r.theta, r.r1, 2);
  const double sc = hypgeom::contact_sin(r.theta) * hypgeom::contact_cos(r.theta);
  r.bound = 2.0 * r.volume + 6.0 * f2 + sc * r.boundary_length;
  r.gap = r.mean_curvature_integral - r.bound;
  r.af_slack = q.A[2] - f2;
  r.pass = r.gap >= -tolerance * std::max(1.0, std::abs(r.mean_curvature_integral));
  return r;
}

std::string to_json(const MinkowskiN2Report& r, int indent) {
  nlohmann::ordered_json j;
  j["theta"] = r.theta;
  j["tolerance"] = r.tolerance;
  j["mean_curvature_integral"] = r.mean_curvature_integral;
  j["volume"] = r.volume;
  j["boundary_length"] = r.boundary_length;
  j["r1"] = r.r1;
  j["bound"] = r.bound;
  j["gap"] = r.gap;
  j["af_slack"] = r.af_slack;
  j["pass"] = r.pass;
  return j.dump(indent);
}

MinkowskiReport minkowski_report(const GraphSurface& surface) {
  const auto fields = geometry(surface);
  MinkowskiReport r;
  r.n = surface.dim();
  r.theta = surface.theta();
  r.area = surface_area(fields);
  for (int k = 1; k <= r.n; ++k) {
    r.residuals.push_back(minkowski_residual(fields, k));
    r.relative.push_back(r.residuals.back() / r.area);
  }
  return r;
}

std::string to_json(const MinkowskiReport& r, int indent) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["theta"] = r.theta;
  j["area"] = r.area;
  j["residuals"] = r.residuals;
  j["relative"] = r.relative;
  return j.dump(indent);
}

}  // namespace capflow
