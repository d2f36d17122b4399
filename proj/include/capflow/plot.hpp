// SPDX-License-Identifier: Apache-2.0
//
// Static SVG line charts of flow monitor time series.
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace capflow {

struct MonitorTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of a column; throws an io error if absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;
};

/// Parses a monitors CSV ('#' lines are comments). Throws an io error on
/// malformed input or when there are no data rows.
MonitorTable read_monitors_csv(std::istream& is);

struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
};

/// Data range widened by `margin` of its span on both sides (a degenerate span
/// is widened relative to the magnitude of the value).
AxisRange axis_range(std::span<const double> values, double margin = 0.05);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::vector<Series>& series);

/// Writes quermass.svg, F_bounds.svg and residuals.svg into out_dir and returns their paths.
std::vector<std::string> plot_monitors(const std::string& csv_path, const std::string& out_dir);

}  // namespace capflow
