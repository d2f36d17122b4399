// SPDX-License-Identifier: Apache-2.0
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string err;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    const auto d = fs::temp_directory_path() / "capflow_test_cli";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Result cli(const std::string& args) {
  const auto err = work_dir() / "stderr.txt";
  const std::string cmd = "cd '" + work_dir().string() + "' && '" CAPFLOW_CLI "' " + args + " > /dev/null 2> '" +
                          err.string() + "'";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

int lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("invalid contact angle is a usage error") {
  const auto r = cli("simulate --theta 2.0 --out bad");
  CHECK(r.code == 1);
  CHECK(r.err.find("theta out of (0, π/2]") != std::string::npos);
  CHECK(lines(r.err) == 1);
  CHECK_FALSE(fs::exists(work_dir() / "bad" / "monitors.csv"));
}

TEST_CASE("argument and configuration errors exit with 1") {
  CHECK(cli("").code == 1);
  CHECK(cli("frobnicate").code == 1);
  CHECK(cli("simulate --resolution notanumber").code == 1);
  std::ofstream(work_dir() / "bad.ini") << "[simulate]\nunknown_key = 3\n";
  auto r = cli("--config bad.ini simulate --out cfg");
  CHECK(r.code == 1);
  CHECK(lines(r.err) == 1);
  r = cli("--config missing.ini simulate");
  CHECK(r.code == 1);
  std::ofstream(work_dir() / "bad2.ini") << "[simulate]\nt_max = soon\n";
  CHECK(cli("--config bad2.ini simulate").code == 1);
  CHECK(cli("cap-table --theta 1.0 --rmin 0.5 --rmax 0.4").code == 1);
}

TEST_CASE("file and validation errors exit with 2") {
  auto r = cli("quermass no_such_file.txt");
  CHECK(r.code == 2);
  CHECK(lines(r.err) == 1);
  std::ofstream(work_dir() / "garbage.txt") << "not a surface\n";
  CHECK(cli("minkowski garbage.txt").code == 2);
  std::ofstream(work_dir() / "empty.csv").close();
  r = cli("plot empty.csv --out empty_plots");
  CHECK(r.code == 2);
  CHECK_FALSE(fs::exists(work_dir() / "empty_plots"));
}

TEST_CASE("simulate, reports and plots") {
  std::ofstream(work_dir() / "run.ini") << "[simulate]\nresolution = 32\nt_max = 0.5\nmonitor_stride = 1\n";
  REQUIRE(cli("--config run.ini simulate --seed 3 --out a --quiet").code == 0);
  REQUIRE(cli("--config run.ini simulate --seed 3 --out b --quiet").code == 0);
  const auto a = slurp(work_dir() / "a" / "monitors.csv");
  CHECK(!a.empty());
  CHECK(a == slurp(work_dir() / "b" / "monitors.csv"));
  CHECK(slurp(work_dir() / "a" / "final_surface.txt") == slurp(work_dir() / "b" / "final_surface.txt"));
  REQUIRE(cli("--config run.ini simulate --seed 4 --out c --quiet").code == 0);
  CHECK(a != slurp(work_dir() / "c" / "monitors.csv"));

  const auto summary = nlohmann::json::parse(slurp(work_dir() / "a" / "summary.json"));
  CHECK(summary.contains("r_star"));
  CHECK(summary.contains("cap_distance"));
  CHECK(summary.contains("conservation_drift"));

  CHECK(cli("quermass a/final_surface.txt --out q.json").code == 0);
  CHECK(nlohmann::json::parse(slurp(work_dir() / "q.json"))["A"].size() == 3);
  CHECK(cli("minkowski a/final_surface.txt").code == 0);
  CHECK(cli("check-af a/final_surface.txt --out af.json").code == 0);
  CHECK(nlohmann::json::parse(slurp(work_dir() / "af.json")).contains("minkowski_n2"));
  CHECK(cli("plot a/monitors.csv --out plots").code == 0);
  for (const char* f : {"quermass.svg", "F_bounds.svg", "residuals.svg"}) CHECK(fs::exists(work_dir() / "plots" / f));
}

TEST_CASE("cap table command") {
  REQUIRE(cli("cap-table --theta 1.0471975511965976 --samples 64 --out table.csv").code == 0);
  std::istringstream is(slurp(work_dir() / "table.csv"));
  std::string line;
  std::getline(is, line);
  CHECK(line == "r,f_0,f_1,f_2");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 64);
}
