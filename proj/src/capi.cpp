// SPDX-License-Identifier: Apache-2.0
#include "capflow/capflow.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <new>
#include <string>

#include "capflow/error.hpp"
#include "capflow/flow.hpp"
#include "capflow/inequal.hpp"
#include "capflow/plot.hpp"
#include "capflow/quermass.hpp"
#include "capflow/surface.hpp"

struct cf_surface {
  capflow::GraphSurface surface;
};

namespace {

thread_local std::string g_last_error;

cf_status status_of(capflow::ErrorKind kind) {
  using capflow::ErrorKind;
  switch (kind) {
    case ErrorKind::usage: return CF_ERR_USAGE;
    case ErrorKind::validation: return CF_ERR_VALIDATION;
    case ErrorKind::io: return CF_ERR_IO;
    case ErrorKind::domain: return CF_ERR_DOMAIN;
    case ErrorKind::cone:
    case ErrorKind::parabolicity:
    case ErrorKind::convexity:
    case ErrorKind::numerical: return CF_ERR_NUMERICAL;
  }
  return CF_ERR_INTERNAL;
}

template <class Fn>
cf_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CF_OK;
  } catch (const capflow::Error& e) {
    g_last_error = std::string(capflow::to_string(e.kind())) + " error: " + e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return CF_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "internal error";
    return CF_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) capflow::fail(capflow::ErrorKind::usage, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

capflow::HalfSphereGrid make_grid(int n, int m, int azimuth) {
  if (azimuth == 0) return capflow::HalfSphereGrid::axisymmetric(n, m);
  if (n != 2) capflow::fail(capflow::ErrorKind::usage, "full grids require n = 2");
  return capflow::HalfSphereGrid::full(m, azimuth);
}

}  // namespace

extern "C" {

const char* cf_version(void) { return "1.0.0"; }

const char* cf_last_error(void) { return g_last_error.c_str(); }

void cf_string_free(char* s) { std::free(s); }

cf_status cf_surface_cap(int n, int m, int azimuth, double theta, double r0, cf_surface** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = nullptr;
    auto s = capflow::cap_graph(theta, r0, make_grid(n, m, azimuth));
    *out = new cf_surface{std::move(s)};
  });
}

void cf_perturbation_default(cf_perturbation* p) {
  if (!p) return;
  const capflow::PerturbationSpec spec;
  p->r0 = spec.r0;
  p->epsilon = spec.epsilon;
  p->modes = spec.modes;
  p->azimuthal_modes = spec.azimuthal_modes;
  p->seed = spec.seed;
}

cf_status cf_surface_perturbed(int n, int m, int azimuth, double theta, const cf_perturbation* p, cf_surface** out) {
  return guarded([&] {
    require(out != nullptr && p != nullptr, "null argument");
    *out = nullptr;
    capflow::PerturbationSpec spec;
    spec.r0 = p->r0;
    spec.epsilon = p->epsilon;
    spec.modes = p->modes;
    spec.azimuthal_modes = p->azimuthal_modes;
    spec.seed = p->seed;
    auto s = capflow::perturbed_cap(theta, spec, make_grid(n, m, azimuth));
    *out = new cf_surface{std::move(s)};
  });
}

cf_status cf_surface_load(const char* path, cf_surface** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "null argument");
    *out = nullptr;
    *out = new cf_surface{capflow::load_surface(path)};
  });
}

cf_status cf_surface_save(const cf_surface* s, const char* path) {
  return guarded([&] {
    require(s != nullptr && path != nullptr, "null argument");
    capflow::save_surface(path, s->surface);
  });
}

void cf_surface_free(cf_surface* s) { delete s; }

cf_status cf_surface_info_get(const cf_surface* s, cf_surface_info* info) {
  return guarded([&] {
    require(s != nullptr && info != nullptr, "null argument");
    const auto& g = s->surface.grid();
    info->n = g.dim();
    info->full = g.mode() == capflow::GridMode::full ? 1 : 0;
    info->m = g.m();
    info->azimuth = info->full ? g.azimuth() : 1;
    info->theta = s->surface.theta();
    info->nodes = g.size();
  });
}

cf_status cf_surface_rho(const cf_surface* s, double* out, size_t len) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    const auto& rho = s->surface.rho();
    require(len >= rho.size(), "output buffer too small");
    std::memcpy(out, rho.data(), rho.size() * sizeof(double));
  });
}

cf_status cf_surface_validate(const cf_surface* s, double enclosing_r0) {
  return guarded([&] {
    require(s != nullptr, "null surface");
    capflow::validate_capillary(s->surface,
                                enclosing_r0 > 0.0 ? std::optional<double>(enclosing_r0) : std::nullopt);
  });
}

cf_status cf_quermass_json(const cf_surface* s, char** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = dup_string(capflow::to_json(capflow::quermass(s->surface)));
  });
}

cf_status cf_minkowski_json(const cf_surface* s, char** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = dup_string(capflow::to_json(capflow::minkowski_report(s->surface)));
  });
}

cf_status cf_check_af_json(const cf_surface* s, double tolerance, char** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    require(tolerance >= 0.0, "tolerance must be non-negative");
    auto j = nlohmann::json::parse(capflow::to_json(capflow::check_af(s->surface, tolerance)));
    if (s->surface.dim() == 2) {
      j["minkowski_n2"] = nlohmann::json::parse(capflow::to_json(capflow::check_minkowski_n2(s->surface, tolerance)));
    }
    *out = dup_string(j.dump(2));
  });
}

cf_status cf_cap_table_csv(int n, double theta, double r_min, double r_max, int samples, char** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = dup_string(capflow::to_csv(capflow::cap_table(n, theta, r_min, r_max, samples)));
  });
}

void cf_flow_params_default(cf_flow_params* p) {
  if (!p) return;
  const capflow::FlowConfig c;
  p->dt_safety = c.dt_safety;
  p->t_max = c.t_max;
  p->stop_speed_tol = c.stop_speed_tol;
  p->monitor_stride = c.monitor_stride;
  p->rel_tol = c.rel_tol;
  p->abs_tol = c.abs_tol;
  p->dt_initial = c.dt_initial;
  p->dt_max = c.dt_max;
  p->max_steps = c.max_steps;
  p->fd_order = c.fd_order;
  p->enclosing_r0 = 0.0;
}

cf_status cf_simulate(const cf_surface* initial, const cf_flow_params* params, const char* monitors_csv_path,
                      const char* final_surface_path, char** summary_json, cf_surface** final_surface) {
  bool aborted = false;
  std::string abort_message;
  const cf_status st = guarded([&] {
    require(initial != nullptr && params != nullptr, "null argument");
    if (summary_json) *summary_json = nullptr;
    if (final_surface) *final_surface = nullptr;
    capflow::FlowConfig c;
    c.dt_safety = params->dt_safety;
    c.t_max = params->t_max;
    c.stop_speed_tol = params->stop_speed_tol;
    c.monitor_stride = params->monitor_stride;
    c.rel_tol = params->rel_tol;
    c.abs_tol = params->abs_tol;
    c.dt_initial = params->dt_initial;
    c.dt_max = params->dt_max;
    c.max_steps = params->max_steps;
    c.fd_order = params->fd_order;
    if (params->enclosing_r0 > 0.0) c.enclosing_r0 = params->enclosing_r0;

    const auto r = capflow::run(initial->surface, c);
    if (monitors_csv_path) {
      std::ofstream os(monitors_csv_path, std::ios::binary);
      if (!os) capflow::fail(capflow::ErrorKind::io, std::string("cannot open '") + monitors_csv_path + "'");
      capflow::write_monitors_csv(os, initial->surface.dim(), r.samples);
      if (!os) capflow::fail(capflow::ErrorKind::io, std::string("write to '") + monitors_csv_path + "' failed");
    }
    if (final_surface_path && r.final_surface) capflow::save_surface(final_surface_path, *r.final_surface);
    if (summary_json) *summary_json = dup_string(capflow::summary_json(r));
    if (final_surface && r.final_surface) *final_surface = new cf_surface{*r.final_surface};
    if (r.aborted) {
      aborted = true;
      abort_message = std::string(capflow::to_string(r.abort_kind)) + " error: " + r.message;
    }
  });
  if (st == CF_OK && aborted) {
    g_last_error = abort_message;
    return CF_ERR_NUMERICAL;
  }
  return st;
}

cf_status cf_plot_monitors(const char* csv_path, const char* out_dir, char** written_json) {
  return guarded([&] {
    require(csv_path != nullptr && out_dir != nullptr, "null argument");
    const auto files = capflow::plot_monitors(csv_path, out_dir);
    if (written_json) *written_json = dup_string(nlohmann::json(files).dump());
  });
}

}  // extern "C"
