// SPDX-License-Identifier: Apache-2.0
#include "capflow/quermass.hpp"

#include <cmath>
#include <json.hpp>

#include "capflow/error.hpp"
#include "capflow/hypgeom.hpp"
#include "capflow/numeric.hpp"

namespace capflow {

std::vector<double> bulk_quermass(double volume, std::span<const double> integrals, int n) {
  if (static_cast<int>(integrals.size()) != n + 1) fail(ErrorKind::domain, "need int H_k for k = 0..n");
  std::vector<double> W(static_cast<std::size_t>(n + 2));
  W[0] = volume;
  W[1] = integrals[0] / (n + 1);
  for (int k = 1; k <= n; ++k) {
    W[static_cast<std::size_t>(k + 1)] =
        integrals[static_cast<std::size_t>(k)] / (n + 1) - static_cast<double>(k) / (n + 2 - k) * W[static_cast<std::size_t>(k - 1)];
  }
  return W;
}

std::vector<double> boundary_quermass(double enclosed_area, std::span<const double> integrals, int n) {
  if (static_cast<int>(integrals.size()) != n) fail(ErrorKind::domain, "need boundary int H_k for k = 0..n-1");
  std::vector<double> WH(static_cast<std::size_t>(n + 1));
  WH[0] = enclosed_area;
  WH[1] = integrals[0] / n;
  for (int k = 1; k <= n - 1; ++k) {
    WH[static_cast<std::size_t>(k + 1)] =
        integrals[static_cast<std::size_t>(k)] / n - static_cast<double>(k) / (n + 1 - k) * WH[static_cast<std::size_t>(k - 1)];
  }
  return WH;
}

std::vector<double> capillary_quermass(std::span<const double> W, std::span<const double> WH, double theta, int n) {
  if (static_cast<int>(W.size()) < n + 1 || static_cast<int>(WH.size()) < n) {
    fail(ErrorKind::domain, "quermass vectors too short");
  }
  const double c = hypgeom::contact_cos(theta);
  const double s = hypgeom::contact_sin(theta);
  std::vector<double> A(static_cast<std::size_t>(n + 1));
  A[0] = W[0];
  A[1] = W[1] - c / (n + 1) * WH[0];
  for (int k = 1; k <= n - 1; ++k) {
    CompensatedSum sum;
    for (int l = 0; l <= k / 2; ++l) {
      double prod = 1.0;
      for (int t = 0; t < l; ++t) prod *= static_cast<double>(k - 2 * t) / (n - k + 2 * (t + 1));
      const double sign = (l % 2 == 0) ? -1.0 : 1.0;  // (-1)^{l-1}
      sum.add(sign * std::pow(s, k - 2 * l) * WH[static_cast<std::size_t>(k - 2 * l)] * prod);
    }
    CompensatedSum total;
    total.add(W[static_cast<std::size_t>(k + 1)]);
    total.add(c / (n + 1) * sum.value());
    A[static_cast<std::size_t>(k + 1)] = total.value();
  }
  return A;
}

QuermassReport quermass(const GraphSurface& surface, const GeometryFields& fields) {
  const int n = surface.dim();
  QuermassReport r;
  r.n = n;
  r.theta = surface.theta();
  r.mode = surface.grid().mode();
  r.m = surface.grid().m();
  r.azimuth = surface.grid().azimuth();
  r.volume = enclosed_volume(surface);
  r.area = surface_area(fields);
  for (int k = 0; k <= n; ++k) r.curvature_integrals.push_back(integrate_curvature(fields, k));

  const auto b = boundary_geometry(surface, fields);
  r.boundary_length = b.length();
  r.boundary_area = boundary_enclosed_area(surface);
  for (int k = 0; k <= n - 1; ++k) {
    CompensatedSum s;
    for (std::size_t i = 0; i < b.size(); ++i) s.add(b.length_weight[i] * b.H(i, k));
    r.boundary_curvature_integrals.push_back(s.value());
  }
  r.W = bulk_quermass(r.volume, r.curvature_integrals, n);
  r.WH = boundary_quermass(r.boundary_area, r.boundary_curvature_integrals, n);
  r.A = capillary_quermass(r.W, r.WH, r.theta, n);
  return r;
}

QuermassReport quermass(const GraphSurface& surface) { return quermass(surface, geometry(surface)); }

std::string to_json(const QuermassReport& r, int indent) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["theta"] = r.theta;
  j["grid"] = {{"mode", to_string(r.mode)}, {"m", r.m}, {"azimuth", r.azimuth}};
  j["W"] = r.W;
  j["WH"] = r.WH;
  j["A"] = r.A;
  j["curvature_integrals"] = r.curvature_integrals;
  j["boundary_curvature_integrals"] = r.boundary_curvature_integrals;
  j["volume"] = r.volume;
  j["area"] = r.area;
  j["boundary_area"] = r.boundary_area;
  j["boundary_length"] = r.boundary_length;
  return j.dump(indent);
}

}  // namespace capflow
