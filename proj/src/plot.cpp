// SPDX-License-Identifier: Apache-2.0
#include "capflow/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>

#include "capflow/error.hpp"

namespace capflow {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string tick_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::size_t MonitorTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) fail(ErrorKind::io, "monitors CSV has no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> MonitorTable::values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

MonitorTable read_monitors_csv(std::istream& is) {
  MonitorTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cells = split(line);
    if (t.columns.empty()) {
      t.columns = std::move(cells);
      if (t.columns.empty() || t.columns[0] != "t") fail(ErrorKind::io, "line " + std::to_string(lineno) + ": header must start with 't'");
      continue;
    }
    if (cells.size() != t.columns.size()) {
      fail(ErrorKind::io, "line " + std::to_string(lineno) + ": expected " + std::to_string(t.columns.size()) +
                              " fields, found " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(c, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0 || pos != c.size()) fail(ErrorKind::io, "line " + std::to_string(lineno) + ": bad number '" + c + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) fail(ErrorKind::io, "monitors CSV is empty");
  if (t.rows.empty()) fail(ErrorKind::io, "monitors CSV has no data rows");
  return t;
}

AxisRange axis_range(std::span<const double> values, double margin) {
  double lo = HUGE_VAL, hi = -HUGE_VAL;
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo > hi) return {0.0, 1.0};
  double span = hi - lo;
  if (span <= 1e-12 * std::max(std::abs(lo), std::abs(hi))) {
    const double pad = std::abs(lo) > 0.0 ? std::abs(lo) * margin : margin;
    return {lo - pad, hi + pad};
  }
  return {lo - margin * span, hi + margin * span};
}

std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::vector<Series>& series) {
  std::vector<double> xs, ys;
  for (const auto& s : series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  const AxisRange xr = axis_range(xs);
  const AxisRange yr = axis_range(ys);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
     << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
     << "</text>\n";
  os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    os << "<line x1=\"" << num(px(xv)) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(px(xv)) << "\" y2=\""
       << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(kTop + ph + 20) << "\" text-anchor=\"middle\">"
       << tick_label(xv) << "</text>\n";
    os << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(yv)) << "\" x2=\"" << num(kLeft) << "\" y2=\""
       << num(py(yv)) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(yv) + 4) << "\" text-anchor=\"end\">" << tick_label(yv)
       << "</text>\n";
  }
  os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 15) << "\" text-anchor=\"middle\">"
     << escape(x_label) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      if (i) os << ' ';
      os << num(px(s.x[i])) << ',' << num(py(s.y[i]));
    }
    os << "\"/>\n";
    const double ly = kTop + 16.0 * static_cast<double>(k) + 10.0;
    os << "<line x1=\"" << num(kLeft + pw + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(kLeft + pw + 32)
       << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << num(kLeft + pw + 38) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::vector<std::string> plot_monitors(const std::string& csv_path, const std::string& out_dir) {
  std::ifstream is(csv_path);
  if (!is) fail(ErrorKind::io, "cannot open '" + csv_path + "'");
  const MonitorTable table = read_monitors_csv(is);
  const auto t = table.values("t");

  auto group = [&](const std::string& prefix) {
    std::vector<Series> out;
    for (const auto& c : table.columns) {
      if (c.rfind(prefix, 0) == 0) out.push_back({c, t, table.values(c)});
    }
    return out;
  };
  struct Chart {
    std::string file;
    std::string title;
    std::vector<Series> series;
  };
  std::vector<Chart> charts = {
      {"quermass.svg", "capillary quermassintegrals A_k", group("A_")},
      {"F_bounds.svg", "bounds of F = H_n / H_(n-1)", {{"F_min", t, table.values("F_min")}, {"F_max", t, table.values("F_max")}}},
      {"residuals.svg", "Minkowski residuals", group("mink_res_")},
  };
  for (const auto& c : charts) {
    if (c.series.empty()) fail(ErrorKind::io, "monitors CSV lacks the columns for " + c.file);
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorKind::io, "cannot create '" + out_dir + "': " + ec.message());
  std::vector<std::string> written;
  for (const auto& c : charts) {
    const auto path = (std::filesystem::path(out_dir) / c.file).string();
    std::ofstream os(path);
    os << svg_line_chart(c.title, "t", c.series);
    if (!os) fail(ErrorKind::io, "write to '" + path + "' failed");
    written.push_back(path);
  }
  return written;
}

}  // namespace capflow
