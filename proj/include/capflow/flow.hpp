// SPDX-License-Identifier: Apache-2.0
//
// Locally constrained inverse curvature flow of capillary graphs,
// d/dt u = (omega/phi) f with f = Vtilde/F - v and F = H_k/H_{k-1} (k = n by default).
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "capflow/error.hpp"
#include "capflow/quermass.hpp"
#include "capflow/surface.hpp"

namespace capflow {

struct FlowConfig {
  double dt_safety = 0.2;        // explicit step fraction of the parabolic limit
  double t_max = 50.0;
  double stop_speed_tol = 1e-6;  // stop once sup|f| falls below
  int monitor_stride = 10;       // accepted steps between monitor samples
  int curvature_order = 0;       // k in F = H_k/H_{k-1}; 0 selects k = n
  int fd_order = 6;
  // adaptive implicit integration used by run()
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  double dt_initial = 1e-3;
  double dt_max = 2.0;
  std::size_t max_steps = 100000;
  std::optional<double> enclosing_r0;  // cap the initial surface must fit into

  void validate() const;
};

struct FlowState {
  double t = 0.0;
  std::size_t step_index = 0;
  GraphSurface surface;
  GeometryFields fields;
};

FlowState make_state(const GraphSurface& surface, const FlowConfig& config = {});

/// Normal speed f = Vtilde/F - v at every node.
std::vector<double> speed(const GeometryFields& fields, int curvature_order = 0);

/// d/dt u at every node, assembled from cached geometry.
std::vector<double> rhs(const GeometryFields& fields, int curvature_order = 0);
/// d/dt u from the coordinate expression of f written in e^rho.
std::vector<double> rhs_coordinate(const HalfSphereGrid& grid, std::span<const double> rho, double theta,
                                   int curvature_order = 0, int fd_order = 6);
/// d/dt u of the closed-hypersurface flow f = V0/F - v (no capillary term).
std::vector<double> rhs_closed(const GeometryFields& fields, int curvature_order = 0);
/// d/dt rho = omega f, the form integrated in time.
std::vector<double> rho_rate(const HalfSphereGrid& grid, std::span<const double> rho, double theta,
                             int curvature_order = 0, int fd_order = 6);

/// Explicit step size dt_safety h^2 / max(Vtilde sum_i F^i sigma^ii / (F^2 phi^2)).
double explicit_step_size(const HalfSphereGrid& grid, const GeometryFields& fields, const FlowConfig& config);
/// One classic four-stage explicit step (dt from explicit_step_size unless given).
FlowState step(const FlowState& state, const FlowConfig& config, std::optional<double> dt = std::nullopt);

struct MonitorSample {
  double t = 0.0;
  QuermassReport quermass;
  std::vector<double> minkowski;  // residuals k = 1..n
  double sup_f = 0.0;
  double F_min = 0.0;
  double F_max = 0.0;
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  double v_min = 0.0;
  double vtilde_min = 0.0;
  double vtilde_max = 0.0;
  double P_min = 0.0;
  double P_max = 0.0;
  double barrier_excess = 0.0;  // max of rho - rho_outer and rho_inner - rho, <= 0 inside
};

MonitorSample sample_monitors(const FlowState& state, const FlowConfig& config,
                              const std::vector<double>* rho_inner = nullptr,
                              const std::vector<double>* rho_outer = nullptr);

/// Contact angles below this are accepted but reported as experimental.
inline constexpr double kSmallContactAngle = 0.2;

struct FlowRun {
  std::vector<MonitorSample> samples;
  std::optional<GraphSurface> final_surface;
  bool converged = false;
  bool aborted = false;
  bool experimental = false;  // theta below kSmallContactAngle
  ErrorKind abort_kind = ErrorKind::numerical;
  std::string message;
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::size_t jacobians = 0;
  double t_final = 0.0;
  double r_inner = 0.0;  // caps bracketing the initial surface
  double r_outer = 0.0;
  // cap fit of the final surface
  double r_star = 0.0;          // f_n(r*) = A_n(0)
  double r_star_final = 0.0;    // f_n(r*) = A_n(final)
  double cap_distance = 0.0;    // sup |rho_final - rho_cap(r*)|
  double conservation_drift = 0.0;  // max_t |A_n(t) - A_n(0)| / |A_n(0)|
  double monotonicity_worst = 0.0;  // most negative increment of A_k, k < n, scaled
  double F_max_excess = 0.0;        // max_t F_max(t) - F_max(0)
  double kappa_min_ratio = 0.0;     // min_t kappa_min(t) / kappa_min(0)
  double barrier_excess = 0.0;
};

using SampleCallback = std::function<void(const MonitorSample&)>;

/// Integrates until sup|f| < stop_speed_tol or t_max with an adaptive
/// L-stable singly diagonally implicit Runge-Kutta method.
FlowRun run(const GraphSurface& initial, const FlowConfig& config, const SampleCallback& on_sample = {});

std::string monitors_csv_header(int n);
std::string monitors_csv_row(const MonitorSample& s);
void write_monitors_csv(std::ostream& os, int n, const std::vector<MonitorSample>& samples);
std::string summary_json(const FlowRun& run, int indent = 2);

}  // namespace capflow
