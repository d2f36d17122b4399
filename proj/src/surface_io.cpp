// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <optional>
#include <sstream>
#include <string>

#include "capflow/error.hpp"
#include "capflow/surface.hpp"

namespace capflow {
namespace {

constexpr const char* kHeader = "# capflow-surface v1";

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& tok, int line) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.size() || tok.empty()) fail(ErrorKind::io, "line " + std::to_string(line) + ": bad number '" + tok + "'");
  return v;
}

}  // namespace

void write_surface(std::ostream& os, const GraphSurface& s) {
  const auto& g = s.grid();
  os << kHeader << '\n';
  os << "n " << g.dim() << '\n';
  os << "mode " << to_string(g.mode()) << '\n';
  os << "m " << g.m() << '\n';
  os << "azimuth " << g.azimuth() << '\n';
  os << "theta " << format17(s.theta()) << '\n';
  os << "rho\n";
  if (g.mode() == GridMode::axisymmetric) {
    for (double r : s.rho()) os << format17(r) << '\n';
  } else {
    for (int i = 0; i <= g.m(); ++i) {
      for (int j = 0; j < g.azimuth(); ++j) {
        if (j) os << ' ';
        os << format17(s.rho()[g.node(i, j)]);
      }
      os << '\n';
    }
  }
}

GraphSurface read_surface(std::istream& is) {
  std::string line;
  int lineno = 0;
  auto next = [&]() -> std::string {
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return line;
    }
    fail(ErrorKind::io, "unexpected end of surface file after line " + std::to_string(lineno));
  };
  if (next() != kHeader) fail(ErrorKind::io, "line 1: missing '# capflow-surface v1' header");
  auto keyed = [&](const std::string& key) {
    std::istringstream ls(next());
    std::string k, v, extra;
    ls >> k >> v;
    if (k != key || v.empty() || (ls >> extra)) {
      fail(ErrorKind::io, "line " + std::to_string(lineno) + ": expected '" + key + " <value>'");
    }
    return v;
  };
  const int n = static_cast<int>(parse_double(keyed("n"), lineno));
  const GridMode mode = grid_mode_from_string(keyed("mode"));
  const int m = static_cast<int>(parse_double(keyed("m"), lineno));
  const int az = static_cast<int>(parse_double(keyed("azimuth"), lineno));
  const double theta = parse_double(keyed("theta"), lineno);
  if (next() != "rho") fail(ErrorKind::io, "line " + std::to_string(lineno) + ": expected 'rho'");

  std::optional<HalfSphereGrid> parsed;
  try {
    parsed = mode == GridMode::axisymmetric ? HalfSphereGrid::axisymmetric(n, m) : HalfSphereGrid::full(m, az);
  } catch (const Error& e) {
    fail(ErrorKind::io, std::string("bad grid header: ") + e.what());
  }
  const HalfSphereGrid& grid = *parsed;
  if (mode == GridMode::full && n != 2) fail(ErrorKind::io, "full grids require n = 2");
  std::vector<double> rho(grid.size());
  if (mode == GridMode::axisymmetric) {
    for (auto& r : rho) r = parse_double(next(), lineno);
  } else {
    for (int i = 0; i <= m; ++i) {
      std::istringstream ls(next());
      std::string tok;
      for (int j = 0; j < az; ++j) {
        if (!(ls >> tok)) fail(ErrorKind::io, "line " + std::to_string(lineno) + ": short row");
        const double v = parse_double(tok, lineno);
        if (i == 0) {
          if (j == 0) {
            rho[0] = v;
          } else if (v != rho[0]) {
            fail(ErrorKind::io, "line " + std::to_string(lineno) + ": pole row is not constant");
          }
        } else {
          rho[grid.node(i, j)] = v;
        }
      }
      if (ls >> tok) fail(ErrorKind::io, "line " + std::to_string(lineno) + ": long row");
    }
  }
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      fail(ErrorKind::io, "line " + std::to_string(lineno) + ": trailing data");
    }
  }
  return GraphSurface(grid, std::move(rho), theta);
}

void save_surface(const std::string& path, const GraphSurface& surface) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::io, "cannot open '" + path + "' for writing");
  write_surface(os, surface);
  if (!os) fail(ErrorKind::io, "write to '" + path + "' failed");
}

GraphSurface load_surface(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::io, "cannot open '" + path + "'");
  return read_surface(is);
}

}  // namespace capflow
