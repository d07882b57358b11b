// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace ftddvs {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Self-contained SVG line plot; log_y uses a log10 axis (nonpositive
/// values are dropped).
void svg_line_plot(const std::string& path, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel,
                   const std::vector<PlotSeries>& series, bool log_y);

/// Heatmap of nodal values on the structured (nx+1) x (ny+1) grid,
/// restricted to columns [i0, i1].
void svg_heatmap(const std::string& path, const std::string& title, int nx,
                 int ny, int i0, int i1, const std::vector<double>& vertex_values);

/// Renders tables and plots from one or more online output directories
/// (summary.json, samples.csv, error_vs_time.csv, field_t_final.csv and any
/// decay_*.csv). File names are keyed by each run's config hash.
void report_from_dirs(const std::vector<std::string>& dirs,
                      const std::string& out_dir);

}  // namespace ftddvs
