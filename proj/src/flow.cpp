// SPDX-License-Identifier: Apache-2.0
#include "capflow/flow.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "capflow/hypgeom.hpp"
#include "capflow/inequal.hpp"
#include "capflow/symfun.hpp"

namespace capflow {
namespace {

int resolve_order(int n, int k) {
  const int kk = k == 0 ? n : k;
  if (kk < 1 || kk > n) fail(ErrorKind::usage, "curvature order must lie in [1, n]");
  return kk;
}

double quotient_at(const GeometryFields& f, std::size_t i, int k) {
  if (!symfun::gamma_k_contains(f.kappas(i), k)) {
    fail(ErrorKind::convexity, "principal curvatures left the cone Gamma_" + std::to_string(k) + " at node " +
                                   std::to_string(i));
  }
  const double below = f.H(i, k - 1);
  if (!(below > 0.0)) fail(ErrorKind::convexity, "H_{k-1} is not positive at node " + std::to_string(i));
  return f.H(i, k) / below;
}

}  // namespace

void FlowConfig::validate() const {
  if (!(dt_safety > 0.0 && dt_safety < 1.0)) fail(ErrorKind::usage, "dt_safety must lie in (0, 1)");
  if (!(stop_speed_tol > 0.0)) fail(ErrorKind::usage, "stop_speed_tol must be positive");
  if (!(t_max > 0.0)) fail(ErrorKind::usage, "t_max must be positive");
  if (monitor_stride < 1) fail(ErrorKind::usage, "monitor_stride must be >= 1");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) fail(ErrorKind::usage, "integration tolerances must be positive");
  if (!(dt_initial > 0.0) || !(dt_max >= dt_initial)) fail(ErrorKind::usage, "need 0 < dt_initial <= dt_max");
  if (curvature_order < 0) fail(ErrorKind::usage, "curvature order must be >= 0");
}

FlowState make_state(const GraphSurface& surface, const FlowConfig& config) {
  return FlowState{0.0, 0, surface, geometry(surface, config.fd_order)};
}

std::vector<double> speed(const GeometryFields& fields, int curvature_order) {
  const int k = resolve_order(fields.n, curvature_order);
  std::vector<double> f(fields.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = fields.vtilde_denom[i] / quotient_at(fields, i, k) - fields.support_v[i];
  }
  return f;
}

std::vector<double> rhs(const GeometryFields& fields, int curvature_order) {
  auto f = speed(fields, curvature_order);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= fields.omega[i] / fields.warp[i];
  return f;
}

std::vector<double> rhs_closed(const GeometryFields& fields, int curvature_order) {
  const int k = resolve_order(fields.n, curvature_order);
  std::vector<double> out(fields.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double f = fields.v0[i] / quotient_at(fields, i, k) - fields.support_v[i];
    out[i] = fields.omega[i] / fields.warp[i] * f;
  }
  return out;
}

std::vector<double> rhs_coordinate(const HalfSphereGrid& grid, std::span<const double> rho, double theta,
                                   int curvature_order, int fd_order) {
  const auto fields = geometry(grid, rho, theta, fd_order);
  const int k = resolve_order(fields.n, curvature_order);
  const double c = hypgeom::contact_cos(theta);
  std::vector<double> out(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double zeta = grid.zeta(grid.ring_of(i));
    const double e = std::exp(rho[i]);
    const NodeJet& j = fields.jets[i];
    const double omega = std::sqrt(1.0 + j.u_zeta * j.u_zeta + j.u_perp * j.u_perp);
    const double phi = (e * e - 1.0) / (2.0 * e);
    const double v0 = (e * e + 1.0) / (2.0 * e);
    const double r = (e - 1.0) / (e + 1.0);
    const double rho_zeta = phi * j.u_zeta;
    const double e_nu = std::cos(zeta) * (e + 1.0) * (e + 1.0) / (2.0 * e * omega) +
                        std::sin(zeta) * (e + 1.0) * rho_zeta / (omega * (e - 1.0));
    const double delta = std::cos(zeta) * r;
    const double y_nu = 0.5 * (1.0 + r * r) * e_nu - delta * phi / omega;
    const double vt = v0 - c * y_nu;
    const double F = quotient_at(fields, i, k);
    out[i] = omega / phi * (vt / F - phi / omega);
  }
  return out;
}

std::vector<double> rho_rate(const HalfSphereGrid& grid, std::span<const double> rho, double theta,
                             int curvature_order, int fd_order) {
  const auto fields = geometry(grid, rho, theta, fd_order);
  auto f = speed(fields, curvature_order);
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] *= fields.omega[i];
    if (!std::isfinite(f[i])) fail(ErrorKind::numerical, "non-finite flow speed at node " + std::to_string(i));
  }
  return f;
}

double explicit_step_size(const HalfSphereGrid& grid, const GeometryFields& fields, const FlowConfig& config) {
  const int k = resolve_order(fields.n, config.curvature_order);
  double coef = 0.0;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto q = symfun::quotient_eval(fields.kappas(i), k, k - 1);
    const double c = fields.vtilde_denom[i] * q.trace() / (q.value * q.value * fields.warp[i] * fields.warp[i]);
    coef = std::max(coef, c);
  }
  double spacing = grid.h();
  if (grid.mode() == GridMode::full) spacing = std::min(spacing, std::sin(grid.h()) * grid.dpsi());
  return config.dt_safety * spacing * spacing / coef;
}

FlowState step(const FlowState& state, const FlowConfig& config, std::optional<double> dt_in) {
  const auto& grid = state.surface.grid();
  const double theta = state.surface.theta();
  const double dt = dt_in ? *dt_in : explicit_step_size(grid, state.fields, config);
  const std::size_t N = grid.size();
  const auto& y = state.surface.rho();
  auto rate = [&](const std::vector<double>& v) {
    return rho_rate(grid, v, theta, config.curvature_order, config.fd_order);
  };
  auto axpy = [&](double a, const std::vector<double>& k) {
    std::vector<double> out(N);
    for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + a * k[i];
    return out;
  };
  const auto k1 = rate(y);
  const auto k2 = rate(axpy(0.5 * dt, k1));
  const auto k3 = rate(axpy(0.5 * dt, k2));
  const auto k4 = rate(axpy(dt, k3));
  std::vector<double> next(N);
  for (std::size_t i = 0; i < N; ++i) next[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  GraphSurface s(grid, std::move(next), theta);
  auto fields = geometry(s, config.fd_order);
  if (!(fields.kappa_min() > 0.0)) fail(ErrorKind::convexity, "convexity lost after explicit step");
  return FlowState{state.t + dt, state.step_index + 1, std::move(s), std::move(fields)};
}

MonitorSample sample_monitors(const FlowState& state, const FlowConfig& config, const std::vector<double>* rho_inner,
                              const std::vector<double>* rho_outer) {
  const auto& f = state.fields;
  const int n = f.n;
  const int k = resolve_order(n, config.curvature_order);
  MonitorSample s;
  s.t = state.t;
  s.quermass = quermass(state.surface, f);
  for (int j = 1; j <= n; ++j) s.minkowski.push_back(minkowski_residual(f, j));
  const auto sp = speed(f, config.curvature_order);
  const double inf = std::numeric_limits<double>::infinity();
  s.F_min = s.kappa_min = s.v_min = s.vtilde_min = s.P_min = inf;
  s.F_max = s.kappa_max = s.vtilde_max = s.P_max = -inf;
  s.barrier_excess = -inf;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double F = quotient_at(f, i, k);
    const double P = f.vtilde[i] * F;
    s.sup_f = std::max(s.sup_f, std::abs(sp[i]));
    s.F_min = std::min(s.F_min, F);
    s.F_max = std::max(s.F_max, F);
    s.v_min = std::min(s.v_min, f.support_v[i]);
    s.vtilde_min = std::min(s.vtilde_min, f.vtilde[i]);
    s.vtilde_max = std::max(s.vtilde_max, f.vtilde[i]);
    s.P_min = std::min(s.P_min, P);
    s.P_max = std::max(s.P_max, P);
    if (rho_inner && rho_outer) {
      s.barrier_excess = std::max({s.barrier_excess, f.rho[i] - (*rho_outer)[i], (*rho_inner)[i] - f.rho[i]});
    }
  }
  s.kappa_min = f.kappa_min();
  s.kappa_max = f.kappa_max();
  if (!(rho_inner && rho_outer)) s.barrier_excess = 0.0;
  return s;
}

namespace {

// Hairer-Wanner five-stage L-stable SDIRK of order 4 with embedded order 3.
constexpr double kGamma = 0.25;
constexpr double kA[5][5] = {
    {0.25, 0, 0, 0, 0},
    {0.5, 0.25, 0, 0, 0},
    {17.0 / 50, -1.0 / 25, 0.25, 0, 0},
    {371.0 / 1360, -137.0 / 2720, 15.0 / 544, 0.25, 0},
    {25.0 / 24, -49.0 / 48, 125.0 / 16, -85.0 / 12, 0.25},
};
constexpr double kBhat[5] = {59.0 / 48, -17.0 / 96, 225.0 / 32, -85.0 / 12, 0.0};

using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

class ImplicitStepper {
 public:
  ImplicitStepper(const HalfSphereGrid& grid, double theta, const FlowConfig& config)
      : grid_(grid), theta_(theta), config_(config), n_(grid.size()) {}

  Vec G(const Vec& y) const {
    const auto r = rho_rate(grid_, std::span<const double>(y.data(), n_), theta_, config_.curvature_order,
                            config_.fd_order);
    return Eigen::Map<const Vec>(r.data(), static_cast<Eigen::Index>(n_));
  }

  void detect_pattern(const Vec& y) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> d(-1e-9, 1e-9);
    Vec yp = y;
    for (Eigen::Index i = 0; i < yp.size(); ++i) yp[i] *= 1.0 + d(rng);
    const Vec g0 = G(yp);
    pattern_.assign(n_, {});
    for (std::size_t j = 0; j < n_; ++j) {
      Vec yj = yp;
      yj[static_cast<Eigen::Index>(j)] *= 1.0 + 1e-7;
      const Vec gj = G(yj);
      for (std::size_t r = 0; r < n_; ++r) {
        if (gj[static_cast<Eigen::Index>(r)] != g0[static_cast<Eigen::Index>(r)]) pattern_[j].push_back(r);
      }
    }
    // Greedy column coloring: columns sharing a color touch disjoint rows.
    std::vector<std::vector<char>> used;
    colors_.clear();
    for (std::size_t j = 0; j < n_; ++j) {
      std::size_t c = 0;
      for (; c < used.size(); ++c) {
        bool clash = false;
        for (std::size_t r : pattern_[j]) {
          if (used[c][r]) {
            clash = true;
            break;
          }
        }
        if (!clash) break;
      }
      if (c == used.size()) {
        used.emplace_back(n_, 0);
        colors_.emplace_back();
      }
      for (std::size_t r : pattern_[j]) used[c][r] = 1;
      colors_[c].push_back(j);
    }
  }

  // Central differences: one-sided ones are spoiled by the strong curvature nonlinearity on fine grids.
  void jacobian(const Vec& y) {
    std::vector<Eigen::Triplet<double>> trip;
    for (const auto& cols : colors_) {
      Vec yp = y;
      Vec ym = y;
      std::vector<double> steps(cols.size());
      for (std::size_t a = 0; a < cols.size(); ++a) {
        const auto j = static_cast<Eigen::Index>(cols[a]);
        steps[a] = 1.5e-8 * std::max(std::abs(y[j]), 0.1);
        yp[j] += steps[a];
        ym[j] -= steps[a];
      }
      const Vec gp = G(yp);
      const Vec gm = G(ym);
      for (std::size_t a = 0; a < cols.size(); ++a) {
        for (std::size_t r : pattern_[cols[a]]) {
          const auto ri = static_cast<Eigen::Index>(r);
          trip.emplace_back(ri, static_cast<Eigen::Index>(cols[a]), (gp[ri] - gm[ri]) / (2.0 * steps[a]));
        }
      }
    }
    J_.resize(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    J_.setFromTriplets(trip.begin(), trip.end());
    analyzed_ = false;
  }

  void factor(double dt) {
    SpMat I(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    I.setIdentity();
    M_ = I - (dt * kGamma) * J_;
    M_.makeCompressed();
    if (!analyzed_) {
      lu_.analyzePattern(M_);
      analyzed_ = true;
    }
    lu_.factorize(M_);
    if (lu_.info() != Eigen::Success) fail(ErrorKind::numerical, "implicit iteration matrix is singular");
    factored_dt_ = dt;
  }

  Vec solve(const Vec& b) { return lu_.solve(b); }
  double factored_dt() const { return factored_dt_; }
  std::size_t color_count() const { return colors_.size(); }

 private:
  const HalfSphereGrid& grid_;
  double theta_;
  const FlowConfig& config_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> pattern_;
  std::vector<std::vector<std::size_t>> colors_;
  SpMat J_;
  SpMat M_;
  Eigen::SparseLU<SpMat> lu_;
  bool analyzed_ = false;
  double factored_dt_ = -1.0;
};

double scaled_norm(const Vec& d, const Vec& y, const FlowConfig& c) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const double w = c.abs_tol + c.rel_tol * std::abs(y[i]);
    s += (d[i] / w) * (d[i] / w);
  }
  return std::sqrt(s / static_cast<double>(d.size()));
}

std::vector<double> cap_profile(const HalfSphereGrid& grid, double theta, double r0) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = hypgeom::rho_from_r(cap_euclidean_radius(theta, r0, grid.zeta(grid.ring_of(i))));
  }
  return out;
}

}  // namespace

FlowRun run(const GraphSurface& initial, const FlowConfig& config, const SampleCallback& on_sample) {
  config.validate();
  validate_capillary(initial, config.enclosing_r0);
  const auto& grid = initial.grid();
  const double theta = initial.theta();
  const int n = grid.dim();
  resolve_order(n, config.curvature_order);

  FlowRun out;
  out.experimental = theta < kSmallContactAngle;
  const auto bracket = cap_bracket(initial);
  out.r_inner = bracket.inner;
  out.r_outer = bracket.outer;
  const auto rho_in = cap_profile(grid, theta, bracket.inner);
  const auto rho_out = cap_profile(grid, theta, bracket.outer);

  FlowState state = make_state(initial, config);
  auto record = [&](const FlowState& st) {
    out.samples.push_back(sample_monitors(st, config, &rho_in, &rho_out));
    if (on_sample) on_sample(out.samples.back());
  };
  record(state);

  const std::size_t N = grid.size();
  ImplicitStepper stepper(grid, theta, config);
  Vec y = Eigen::Map<const Vec>(initial.rho().data(), static_cast<Eigen::Index>(N));
  double t = 0.0;
  double dt = config.dt_initial;
  bool need_jac = true;
  bool pattern_ready = false;
  int jac_age = 0;
  std::size_t since_sample = 0;
  bool last_sampled = true;

  try {
    if (out.samples.back().sup_f < config.stop_speed_tol) {
      out.converged = true;
      out.message = "converged";
    }
    while (!out.converged) {
      if (t >= config.t_max * (1.0 - 1e-14)) {
        out.message = "t_max reached before sup|f| < stop_speed_tol";
        break;
      }
      if (out.steps >= config.max_steps) {
        out.message = "step limit reached";
        break;
      }
      dt = std::min({dt, config.dt_max, config.t_max - t});
      if (dt < 1e-13) fail(ErrorKind::numerical, "step size underflow in the implicit integrator");

      if (!pattern_ready) {
        stepper.detect_pattern(y);
        pattern_ready = true;
      }
      if (need_jac) {
        stepper.jacobian(y);
        ++out.jacobians;
        need_jac = false;
        jac_age = 0;
      }
      if (stepper.factored_dt() != dt) stepper.factor(dt);

      std::array<Vec, 5> K;
      Vec Z = y;
      bool newton_ok = true;
      int worst_iters = 0;
      try {
        for (int i = 0; i < 5 && newton_ok; ++i) {
          Vec R = y;
          for (int j = 0; j < i; ++j) R += dt * kA[i][j] * K[static_cast<std::size_t>(j)];
          // An explicit predictor would amplify stiff components, so stage 0 starts from y.
          Z = i == 0 ? R : Vec(R + dt * kGamma * K[static_cast<std::size_t>(i - 1)]);
          double prev = 0.0;
          bool done = false;
          for (int it = 0; it < 10; ++it) {
            const Vec res = Z - dt * kGamma * stepper.G(Z) - R;
            const Vec delta = stepper.solve(-res);
            Z += delta;
            const double nrm = scaled_norm(delta, y, config);
            worst_iters = std::max(worst_iters, it + 1);
            if (it > 0 && nrm > 0.9 * prev) break;
            prev = nrm;
            if (nrm < 1e-3) {
              done = true;
              break;
            }
          }
          if (!done) newton_ok = false;
          K[static_cast<std::size_t>(i)] = (Z - R) / (dt * kGamma);
        }
      } catch (const Error&) {
        newton_ok = false;
      }
      if (!newton_ok) {
        ++out.rejected;
        dt *= 0.3;
        need_jac = true;
        continue;
      }

      const Vec& y_new = Z;
      Vec err = Vec::Zero(static_cast<Eigen::Index>(N));
      for (int j = 0; j < 5; ++j) err += dt * (kA[4][j] - kBhat[j]) * K[static_cast<std::size_t>(j)];
      const double E = scaled_norm(stepper.solve(err), y, config);
      const double fac = std::clamp(0.9 * std::pow(std::max(E, 1e-10), -0.25), 0.2, 5.0);
      if (!(E <= 1.0) || !y_new.allFinite()) {
        ++out.rejected;
        dt *= std::isfinite(E) ? std::min(fac, 0.9) : 0.2;
        if (jac_age > 0) need_jac = true;
        continue;
      }

      // Accepted: refresh geometry; convexity and parabolicity losses abort the run.
      std::vector<double> rho_new(y_new.data(), y_new.data() + N);
      GraphSurface s(grid, std::move(rho_new), theta);
      auto fields = geometry(s, config.fd_order);
      if (!(fields.kappa_min() > 0.0)) fail(ErrorKind::convexity, "convexity lost at t = " + std::to_string(t + dt));
      const auto sp = speed(fields, config.curvature_order);
      double sup_f = 0.0;
      for (double v : sp) sup_f = std::max(sup_f, std::abs(v));

      t += dt;
      y = y_new;
      ++out.steps;
      ++jac_age;
      state = FlowState{t, out.steps, std::move(s), std::move(fields)};
      dt *= fac;
      if (worst_iters > 4 || jac_age >= 8) need_jac = true;

      ++since_sample;
      last_sampled = false;
      const bool done = sup_f < config.stop_speed_tol;
      if (since_sample >= static_cast<std::size_t>(config.monitor_stride) || done) {
        record(state);
        since_sample = 0;
        last_sampled = true;
      }
      if (done) {
        out.converged = true;
        out.message = "converged";
      }
    }
    if (!last_sampled) record(state);
  } catch (const Error& e) {
    out.aborted = true;
    out.abort_kind = e.kind();
    out.message = e.what();
  }

  out.t_final = state.t;
  out.final_surface = state.surface;

  // Run statistics over the sampled times.
  const auto& first = out.samples.front();
  const double An0 = first.quermass.A[static_cast<std::size_t>(n)];
  out.kappa_min_ratio = std::numeric_limits<double>::infinity();
  out.barrier_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    const auto& s = out.samples[i];
    out.conservation_drift =
        std::max(out.conservation_drift, std::abs(s.quermass.A[static_cast<std::size_t>(n)] - An0) / std::abs(An0));
    out.F_max_excess = std::max(out.F_max_excess, s.F_max - first.F_max);
    out.kappa_min_ratio = std::min(out.kappa_min_ratio, s.kappa_min / first.kappa_min);
    out.barrier_excess = std::max(out.barrier_excess, s.barrier_excess);
    if (i > 0) {
      for (int k = 1; k <= n - 1; ++k) {
        const double scale = std::max(1.0, std::abs(first.quermass.A[static_cast<std::size_t>(k)]));
        const double inc = (s.quermass.A[static_cast<std::size_t>(k)] -
                            out.samples[i - 1].quermass.A[static_cast<std::size_t>(k)]) /
                           scale;
        out.monotonicity_worst = std::min(out.monotonicity_worst, inc);
      }
    }
  }

  if (out.converged) {
    try {
      const auto& last = out.samples.back();
      out.r_star = cap_reference_inverse(n, theta, n, An0);
      out.r_star_final = cap_reference_inverse(n, theta, n, last.quermass.A[static_cast<std::size_t>(n)]);
      const auto cap = cap_profile(grid, theta, out.r_star);
      for (std::size_t i = 0; i < N; ++i) {
        out.cap_distance = std::max(out.cap_distance, std::abs(out.final_surface->rho()[i] - cap[i]));
      }
    } catch (const Error& e) {
      out.message += std::string("; cap fit failed: ") + e.what();
    }
  }
  return out;
}

std::string monitors_csv_header(int n) {
  std::ostringstream os;
  os << "t";
  for (int k = 0; k <= n; ++k) os << ",A_" << k;
  for (int k = 0; k <= n + 1; ++k) os << ",W_" << k;
  for (int k = 0; k <= n; ++k) os << ",WH_" << k;
  os << ",sup_f,F_min,F_max,kappa_min,kappa_max";
  for (int k = 1; k <= n; ++k) os << ",mink_res_" << k;
  os << ",v_min,vtilde_min,vtilde_max,P_min,P_max";
  return os.str();
}

std::string monitors_csv_row(const MonitorSample& s) {
  std::ostringstream os;
  char buf[40];
  bool first = true;
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    if (!first) os << ',';
    os << buf;
    first = false;
  };
  put(s.t);
  for (double x : s.quermass.A) put(x);
  for (double x : s.quermass.W) put(x);
  for (double x : s.quermass.WH) put(x);
  put(s.sup_f);
  put(s.F_min);
  put(s.F_max);
  put(s.kappa_min);
  put(s.kappa_max);
  for (double x : s.minkowski) put(x);
  put(s.v_min);
  put(s.vtilde_min);
  put(s.vtilde_max);
  put(s.P_min);
  put(s.P_max);
  return os.str();
}

void write_monitors_csv(std::ostream& os, int n, const std::vector<MonitorSample>& samples) {
  os << "# capflow monitors v1\n" << monitors_csv_header(n) << '\n';
  for (const auto& s : samples) os << monitors_csv_row(s) << '\n';
}

std::string summary_json(const FlowRun& r, int indent) {
  nlohmann::ordered_json j;
  j["converged"] = r.converged;
  j["aborted"] = r.aborted;
  j["experimental"] = r.experimental;
  if (r.aborted) j["abort_kind"] = to_string(r.abort_kind);
  j["message"] = r.message;
  j["steps"] = r.steps;
  j["rejected_steps"] = r.rejected;
  j["jacobians"] = r.jacobians;
  j["t_final"] = r.t_final;
  j["samples"] = r.samples.size();
  j["r_inner"] = r.r_inner;
  j["r_outer"] = r.r_outer;
  j["r_star"] = r.r_star;
  j["r_star_final"] = r.r_star_final;
  j["cap_distance"] = r.cap_distance;
  j["conservation_drift"] = r.conservation_drift;
  j["monotonicity_worst"] = r.monotonicity_worst;
  j["F_max_excess"] = r.F_max_excess;
  j["kappa_min_ratio"] = r.kappa_min_ratio;
  j["barrier_excess"] = r.barrier_excess;
  if (!r.samples.empty()) j["sup_f_final"] = r.samples.back().sup_f;
  return j.dump(indent);
}

}  // namespace capflow
