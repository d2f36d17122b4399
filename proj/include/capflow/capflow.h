/* SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the capflow library: capillary graphs in hyperbolic space,
 * their quermassintegrals, inequality checks and the locally constrained
 * inverse curvature flow.
 *
 * Every function returns a cf_status. On failure cf_last_error() describes the
 * problem in one line; the text stays valid until the next call on the same
 * thread. Strings returned through char** are owned by the caller and must be
 * released with cf_string_free.
 */
#ifndef CAPFLOW_CAPFLOW_H
#define CAPFLOW_CAPFLOW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CF_API __declspec(dllexport)
#else
#define CF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cf_status {
  CF_OK = 0,
  CF_ERR_USAGE = 1,      /* invalid argument or configuration value */
  CF_ERR_VALIDATION = 2, /* input surface violates a modelling hypothesis */
  CF_ERR_NUMERICAL = 3,  /* loss of convexity or parabolicity, non-finite values */
  CF_ERR_IO = 4,         /* file format or filesystem problem */
  CF_ERR_DOMAIN = 5,     /* argument outside the mathematical domain */
  CF_ERR_INTERNAL = 6
} cf_status;

typedef struct cf_surface cf_surface;

typedef struct cf_surface_info {
  int n;        /* hypersurface dimension */
  int full;     /* 1 for full (zeta, psi) grids, 0 for axisymmetric */
  int m;        /* polar intervals on [0, pi/2] */
  int azimuth;  /* azimuthal nodes per ring, 1 when axisymmetric */
  double theta; /* contact angle */
  size_t nodes; /* stored rho values */
} cf_surface_info;

typedef struct cf_perturbation {
  double r0;      /* parameter of the underlying cap */
  double epsilon; /* relative size of the radial perturbation */
  int modes;      /* polar modes */
  int azimuthal_modes;
  uint64_t seed;
} cf_perturbation;

typedef struct cf_flow_params {
  double dt_safety;
  double t_max;
  double stop_speed_tol;
  int monitor_stride;
  double rel_tol;
  double abs_tol;
  double dt_initial;
  double dt_max;
  size_t max_steps;
  int fd_order;
  double enclosing_r0; /* <= 0 disables the enclosing-cap check */
} cf_flow_params;

CF_API const char* cf_version(void);
CF_API const char* cf_last_error(void);
CF_API void cf_string_free(char* s);

/* azimuth = 0 selects an axisymmetric grid; otherwise n must be 2. */
CF_API cf_status cf_surface_cap(int n, int m, int azimuth, double theta, double r0, cf_surface** out);
CF_API void cf_perturbation_default(cf_perturbation* p);
CF_API cf_status cf_surface_perturbed(int n, int m, int azimuth, double theta, const cf_perturbation* p,
                                      cf_surface** out);
CF_API cf_status cf_surface_load(const char* path, cf_surface** out);
CF_API cf_status cf_surface_save(const cf_surface* s, const char* path);
CF_API void cf_surface_free(cf_surface* s);
CF_API cf_status cf_surface_info_get(const cf_surface* s, cf_surface_info* info);
/* Copies the stored rho values; len must be at least info.nodes. */
CF_API cf_status cf_surface_rho(const cf_surface* s, double* out, size_t len);
/* Validation error naming the offending node unless the surface is admissible. */
CF_API cf_status cf_surface_validate(const cf_surface* s, double enclosing_r0);

CF_API cf_status cf_quermass_json(const cf_surface* s, char** out);
CF_API cf_status cf_minkowski_json(const cf_surface* s, char** out);
/* Alexandrov-Fenchel slacks; for n = 2 the report also carries the mean-curvature inequality. */
CF_API cf_status cf_check_af_json(const cf_surface* s, double tolerance, char** out);
CF_API cf_status cf_cap_table_csv(int n, double theta, double r_min, double r_max, int samples, char** out);

CF_API void cf_flow_params_default(cf_flow_params* p);
/* Runs the flow. Output paths may be NULL. A run that aborts (convexity or
 * parabolicity loss) still writes its outputs and returns CF_ERR_NUMERICAL. */
CF_API cf_status cf_simulate(const cf_surface* initial, const cf_flow_params* params, const char* monitors_csv_path,
                             const char* final_surface_path, char** summary_json, cf_surface** final_surface);

/* Writes one SVG per channel group of a monitors CSV into out_dir and returns
 * a JSON list of the written files. */
CF_API cf_status cf_plot_monitors(const char* csv_path, const char* out_dir, char** written_json);

#ifdef __cplusplus
}
#endif

#endif /* CAPFLOW_CAPFLOW_H */
