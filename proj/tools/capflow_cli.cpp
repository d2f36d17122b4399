// SPDX-License-Identifier: Apache-2.0
//
// capflow command-line front end. Talks to the library only through capflow.h.
#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "capflow/capflow.h"

namespace {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kNumerical = 3 };

int exit_code(cf_status s) {
  switch (s) {
    case CF_OK: return kOk;
    case CF_ERR_USAGE:
    case CF_ERR_DOMAIN: return kUsage;
    case CF_ERR_VALIDATION:
    case CF_ERR_IO: return kValidation;
    case CF_ERR_NUMERICAL:
    case CF_ERR_INTERNAL: return kNumerical;
  }
  return kNumerical;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

int report(cf_status s) {
  std::cerr << "capflow: " << one_line(cf_last_error()) << '\n';
  return exit_code(s);
}

int usage_error(const std::string& what) {
  std::cerr << "capflow: usage error: " << one_line(what) << '\n';
  return kUsage;
}

struct SurfaceHandle {
  cf_surface* p = nullptr;
  ~SurfaceHandle() { cf_surface_free(p); }
};

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { cf_string_free(p); }
};

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> resolution;
  std::optional<double> theta;
  bool quiet = false;
};

struct SimulateSettings {
  int n = 2;
  int m = 256;
  int azimuth = 0;
  double theta = std::numbers::pi / 3;
  std::string initial;  // surface file; empty selects a perturbed cap
  cf_perturbation perturbation{};
  cf_flow_params flow{};
};

struct CapTableSettings {
  int n = 2;
  double theta = std::numbers::pi / 3;
  double r_min = 0.05;
  std::optional<double> r_max;
  int samples = 64;
};

// Overwrites target with the value of `key` when the section has it.
template <class T>
void ini_get(const pt::ptree& section, const char* key, T& target) {
  if (section.find(key) == section.not_found()) return;
  try {
    target = section.get<T>(key);
  } catch (const pt::ptree_bad_data&) {
    throw std::runtime_error(std::string("bad value '") + section.get<std::string>(key) + "' for key '" + key + "'");
  }
}

void check_known_keys(const pt::ptree& section, const std::string& name, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : section) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw std::runtime_error("unknown key '" + k + "' in [" + name + "]");
  }
}

pt::ptree load_config(const std::string& path) {
  pt::ptree tree;
  if (path.empty()) return tree;
  if (!fs::exists(path)) throw std::runtime_error("config file '" + path + "' not found");
  pt::read_ini(path, tree);
  return tree;
}

void apply_simulate_config(const pt::ptree& tree, SimulateSettings& s) {
  const auto section = tree.get_child_optional("simulate");
  if (!section) return;
  check_known_keys(*section, "simulate",
                   {"n", "resolution", "azimuth", "theta", "initial", "r0", "epsilon", "modes", "azimuthal_modes",
                    "seed", "t_max", "dt_safety", "stop_speed_tol", "monitor_stride", "rel_tol", "abs_tol",
                    "dt_initial", "dt_max", "max_steps", "enclosing_r0"});
  ini_get(*section, "n", s.n);
  ini_get(*section, "resolution", s.m);
  ini_get(*section, "azimuth", s.azimuth);
  ini_get(*section, "theta", s.theta);
  ini_get(*section, "initial", s.initial);
  ini_get(*section, "r0", s.perturbation.r0);
  ini_get(*section, "epsilon", s.perturbation.epsilon);
  ini_get(*section, "modes", s.perturbation.modes);
  ini_get(*section, "azimuthal_modes", s.perturbation.azimuthal_modes);
  ini_get(*section, "seed", s.perturbation.seed);
  ini_get(*section, "t_max", s.flow.t_max);
  ini_get(*section, "dt_safety", s.flow.dt_safety);
  ini_get(*section, "stop_speed_tol", s.flow.stop_speed_tol);
  ini_get(*section, "monitor_stride", s.flow.monitor_stride);
  ini_get(*section, "rel_tol", s.flow.rel_tol);
  ini_get(*section, "abs_tol", s.flow.abs_tol);
  ini_get(*section, "dt_initial", s.flow.dt_initial);
  ini_get(*section, "dt_max", s.flow.dt_max);
  ini_get(*section, "max_steps", s.flow.max_steps);
  ini_get(*section, "enclosing_r0", s.flow.enclosing_r0);
}

void apply_cap_table_config(const pt::ptree& tree, CapTableSettings& s) {
  const auto section = tree.get_child_optional("cap-table");
  if (!section) return;
  check_known_keys(*section, "cap-table", {"n", "theta", "r_min", "r_max", "samples"});
  ini_get(*section, "n", s.n);
  ini_get(*section, "theta", s.theta);
  ini_get(*section, "r_min", s.r_min);
  if (section->find("r_max") != section->not_found()) {
    double r_max = 0.0;
    ini_get(*section, "r_max", r_max);
    s.r_max = r_max;
  }
  ini_get(*section, "samples", s.samples);
}

void print(const char* text) {
  const std::string s(text);
  std::cout << s;
  if (!s.empty() && s.back() != '\n') std::cout << '\n';
}

bool write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
  return static_cast<bool>(os);
}

int cmd_simulate(const Options& opt) {
  SimulateSettings s;
  cf_perturbation_default(&s.perturbation);
  cf_flow_params_default(&s.flow);
  try {
    apply_simulate_config(load_config(opt.config), s);
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
  if (opt.seed) s.perturbation.seed = *opt.seed;
  if (opt.resolution) s.m = *opt.resolution;
  if (opt.theta) s.theta = *opt.theta;
  const fs::path out = opt.out.empty() ? fs::path(".") : fs::path(opt.out);

  SurfaceHandle initial;
  cf_status st = s.initial.empty()
                     ? cf_surface_perturbed(s.n, s.m, s.azimuth, s.theta, &s.perturbation, &initial.p)
                     : cf_surface_load(s.initial.c_str(), &initial.p);
  if (st != CF_OK) return report(st);

  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) {
    std::cerr << "capflow: io error: cannot create '" << out.string() << "': " << ec.message() << '\n';
    return kValidation;
  }
  const auto csv = (out / "monitors.csv").string();
  const auto final_path = (out / "final_surface.txt").string();
  OwnedString summary;
  st = cf_simulate(initial.p, &s.flow, csv.c_str(), final_path.c_str(), &summary.p, nullptr);
  if (summary.p) {
    if (!write_text(out / "summary.json", summary.p)) {
      std::cerr << "capflow: io error: cannot write summary.json\n";
      return kValidation;
    }
    if (!opt.quiet) print(summary.p);
  }
  if (st != CF_OK) return report(st);
  return kOk;
}

int with_surface(const std::string& path, bool validate, cf_status (*fn)(const cf_surface*, char**),
                 const Options& opt) {
  SurfaceHandle s;
  cf_status st = cf_surface_load(path.c_str(), &s.p);
  if (st != CF_OK) return report(st);
  if (validate) {
    st = cf_surface_validate(s.p, 0.0);
    if (st != CF_OK) return report(st);
  }
  OwnedString json;
  st = fn(s.p, &json.p);
  if (st != CF_OK) return report(st);
  if (!opt.out.empty()) {
    if (!write_text(opt.out, json.p)) {
      std::cerr << "capflow: io error: cannot write '" << opt.out << "'\n";
      return kValidation;
    }
  }
  if (!opt.quiet) print(json.p);
  return kOk;
}

cf_status af_default_tolerance(const cf_surface* s, char** out) { return cf_check_af_json(s, 1e-8, out); }

int cmd_cap_table(const Options& opt, CapTableSettings s, bool n_given, bool rmin_given, bool rmax_given,
                  bool samples_given) {
  CapTableSettings cfg;
  try {
    apply_cap_table_config(load_config(opt.config), cfg);
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
  if (!n_given) s.n = cfg.n;
  if (!rmin_given) s.r_min = cfg.r_min;
  if (!rmax_given) s.r_max = cfg.r_max;
  if (!samples_given) s.samples = cfg.samples;
  s.theta = opt.theta ? *opt.theta : cfg.theta;
  // Caps leave the ball at r = 1/sin(theta); an invalid theta is reported by the library.
  if (!s.r_max) s.r_max = s.theta > 0.0 && s.theta <= std::numbers::pi / 2 ? 0.95 / std::sin(s.theta) : 0.95;
  OwnedString csv;
  const cf_status st = cf_cap_table_csv(s.n, s.theta, s.r_min, *s.r_max, s.samples, &csv.p);
  if (st != CF_OK) return report(st);
  if (!opt.out.empty()) {
    if (!write_text(opt.out, csv.p)) {
      std::cerr << "capflow: io error: cannot write '" << opt.out << "'\n";
      return kValidation;
    }
  }
  if (!opt.quiet) print(csv.p);
  return kOk;
}

int cmd_plot(const Options& opt, const std::string& csv) {
  OwnedString written;
  const std::string out = opt.out.empty() ? "." : opt.out;
  const cf_status st = cf_plot_monitors(csv.c_str(), out.c_str(), &written.p);
  if (st != CF_OK) return report(st);
  if (!opt.quiet) print(written.p);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capflow: capillary hypersurfaces in hyperbolic space and their inverse curvature flow"};
  app.set_version_flag("--version", std::string(cf_version()));
  app.require_subcommand(1);

  Options opt;
  std::uint64_t seed = 0;
  int resolution = 0;
  double theta = 0.0;
  app.add_option("--config", opt.config, "INI file with [simulate] and [cap-table] sections");
  app.add_option("--out", opt.out, "output directory (simulate, plot) or file (reports)");
  auto* seed_opt = app.add_option("--seed", seed, "perturbation seed");
  auto* res_opt = app.add_option("--resolution", resolution, "polar intervals m");
  auto* theta_opt = app.add_option("--theta", theta, "contact angle in (0, pi/2]");
  app.add_flag("--quiet", opt.quiet, "suppress report output on stdout");

  auto* simulate = app.add_subcommand("simulate", "run the flow from a perturbed cap or a surface file");
  std::string file;
  auto* quermass = app.add_subcommand("quermass", "capillary quermassintegrals of a surface file");
  quermass->add_option("file", file, "surface file")->required();
  auto* minkowski = app.add_subcommand("minkowski", "Minkowski-formula residuals of a surface file");
  minkowski->add_option("file", file, "surface file")->required();
  auto* check_af = app.add_subcommand("check-af", "validate a surface and check the geometric inequalities");
  check_af->add_option("file", file, "surface file")->required();

  CapTableSettings table;
  double r_max = 0.0;
  auto* cap_table = app.add_subcommand("cap-table", "tabulate the cap reference functions f_k(r)");
  auto* n_opt = cap_table->add_option("--n", table.n, "hypersurface dimension");
  auto* rmin_opt = cap_table->add_option("--rmin", table.r_min, "smallest cap parameter");
  auto* rmax_opt = cap_table->add_option("--rmax", r_max, "largest cap parameter");
  auto* samples_opt = cap_table->add_option("--samples", table.samples, "number of rows");

  auto* plot = app.add_subcommand("plot", "render SVG charts of a monitors CSV");
  plot->add_option("csv", file, "monitors CSV")->required();

  for (auto* sub : {simulate, quermass, minkowski, check_af, cap_table, plot}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return usage_error(e.what());
  }
  if (seed_opt->count()) opt.seed = seed;
  if (res_opt->count()) opt.resolution = resolution;
  if (theta_opt->count()) opt.theta = theta;
  if (rmax_opt->count()) table.r_max = r_max;

  if (*simulate) return cmd_simulate(opt);
  if (*quermass) return with_surface(file, false, cf_quermass_json, opt);
  if (*minkowski) return with_surface(file, false, cf_minkowski_json, opt);
  if (*check_af) return with_surface(file, true, af_default_tolerance, opt);
  if (*cap_table) return cmd_cap_table(opt, table, n_opt->count() > 0, rmin_opt->count() > 0, rmax_opt->count() > 0,
                                         samples_opt->count() > 0);
  if (*plot) return cmd_plot(opt, file);
  return usage_error("no subcommand");
}
