// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

#include "capflow/error.hpp"
#include "capflow/flow.hpp"
#include "capflow/plot.hpp"
#include "doctest.h"

using namespace capflow;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("capflow_test_plot_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string small_run_csv() {
  PerturbationSpec spec;
  FlowConfig config;
  config.t_max = 0.5;
  config.monitor_stride = 1;
  const auto r = run(perturbed_cap(std::numbers::pi / 3, spec, HalfSphereGrid::axisymmetric(2, 32)), config);
  std::ostringstream os;
  write_monitors_csv(os, 2, r.samples);
  return os.str();
}

}  // namespace

TEST_CASE("axis range covers the data with a five percent margin") {
  const std::vector<double> v = {2.0, -1.0, 5.0, 0.5};
  const auto r = axis_range(v);
  CHECK(r.lo == doctest::Approx(-1.0 - 0.3));
  CHECK(r.hi == doctest::Approx(5.0 + 0.3));
  const std::vector<double> flat = {3.0, 3.0};
  const auto f = axis_range(flat);
  CHECK(f.lo < 3.0);
  CHECK(f.hi > 3.0);
  const std::vector<double> zero = {0.0};
  CHECK(axis_range(zero).hi > axis_range(zero).lo);
}

TEST_CASE("chart snapshot places extreme points on the padded frame") {
  const Series s{"y", {0.0, 1.0, 2.0}, {0.0, 10.0, 5.0}};
  const std::string svg = svg_line_chart("demo", "t", {s});
  // Plot box spans x in [90, 550] and y in [40, 380]; data sit 5% inside it.
  CHECK(svg.find("points=\"110.91,364.55 320.00,55.45 529.09,210.00\"") != std::string::npos);
  CHECK(svg.find("<text x=\"320.00\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">demo</text>") != std::string::npos);
  CHECK(svg == svg_line_chart("demo", "t", {s}));
}

TEST_CASE("monitors CSV parser") {
  std::istringstream ok("# comment\nt,A_0,F_min\n0,1,2\n1,1.5,2.5\n");
  const auto t = read_monitors_csv(ok);
  CHECK(t.columns.size() == 3);
  CHECK(t.rows.size() == 2);
  CHECK(t.values("A_0")[1] == 1.5);
  CHECK_THROWS_AS(t.column("missing"), Error);

  for (const char* bad : {"", "# only a comment\n", "t,A_0\n", "t,A_0\n0,1,2\n", "t,A_0\n0,abc\n", "x,A_0\n0,1\n"}) {
    std::istringstream is(bad);
    try {
      read_monitors_csv(is);
      FAIL("accepted malformed CSV: " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::io);
    }
  }
}

TEST_CASE("one SVG per channel group from a flow run") {
  const auto dir = scratch_dir("run");
  fs::create_directories(dir);
  const auto csv = dir / "monitors.csv";
  std::ofstream(csv) << small_run_csv();
  const auto files = plot_monitors(csv.string(), (dir / "svg").string());
  REQUIRE(files.size() == 3);
  for (const auto& f : files) {
    const auto text = slurp(f);
    CHECK(text.rfind("<svg", 0) == 0);
    CHECK(text.find("</svg>") != std::string::npos);
    CHECK(text.find("nan") == std::string::npos);
  }
  CHECK(slurp(files[0]).find(">A_2</text>") != std::string::npos);
  CHECK(slurp(files[1]).find(">F_max</text>") != std::string::npos);
  CHECK(slurp(files[2]).find(">mink_res_2</text>") != std::string::npos);

  const auto first = slurp(files[0]);
  plot_monitors(csv.string(), (dir / "svg").string());
  CHECK(slurp(files[0]) == first);
  fs::remove_all(dir);
}

TEST_CASE("empty CSV writes no file") {
  const auto dir = scratch_dir("empty");
  fs::create_directories(dir);
  const auto csv = dir / "empty.csv";
  std::ofstream(csv).close();
  CHECK_THROWS_AS(plot_monitors(csv.string(), (dir / "svg").string()), Error);
  CHECK_FALSE(fs::exists(dir / "svg"));
  fs::remove_all(dir);
}
