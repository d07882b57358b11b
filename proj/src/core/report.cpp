// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ftddvs {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 460;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b"};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Csv read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("report: cannot open '" + path + "'");
  Csv csv;
  std::string line;
  if (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) csv.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

void color_ramp(double t, int& r, int& g, int& b) {
  // Blue -> white -> red.
  t = std::clamp(t, 0.0, 1.0);
  if (t < 0.5) {
    const double s = t / 0.5;
    r = static_cast<int>(30 + 225 * s);
    g = static_cast<int>(60 + 195 * s);
    b = 255;
  } else {
    const double s = (t - 0.5) / 0.5;
    r = 255;
    g = static_cast<int>(255 - 195 * s);
    b = static_cast<int>(255 - 225 * s);
  }
}

}  // namespace

void svg_line_plot(const std::string& path, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel,
                   const std::vector<PlotSeries>& series, bool log_y) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      const double y = s.y[i];
      if (log_y && !(y > 0.0)) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      const double yy = log_y ? std::log10(y) : y;
      ymin = std::min(ymin, yy);
      ymax = std::max(ymax, yy);
    }
  }
  if (xmin > xmax) { xmin = 0; xmax = 1; }
  if (ymin > ymax) { ymin = 0; ymax = 1; }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) { ymax += 0.5; ymin -= 0.5; }

  auto px = [&](double x) {
    return kMarginL + (x - xmin) / (xmax - xmin) * (kWidth - kMarginL - kMarginR);
  };
  auto py = [&](double yv) {
    const double y = log_y ? std::log10(yv) : yv;
    return kHeight - kMarginB -
           (y - ymin) / (ymax - ymin) * (kHeight - kMarginT - kMarginB);
  };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("svg_line_plot: cannot write '" + path + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-size=\"15\">" << esc(title) << "</text>\n";

  // Axes and ticks.
  out << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\""
      << kWidth - kMarginL - kMarginR << "\" height=\""
      << kHeight - kMarginT - kMarginB
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  const int nticks = 5;
  for (int k = 0; k <= nticks; ++k) {
    const double fx = xmin + (xmax - xmin) * k / nticks;
    out << "<line x1=\"" << px(fx) << "\" y1=\"" << kHeight - kMarginB
        << "\" x2=\"" << px(fx) << "\" y2=\"" << kHeight - kMarginB + 5
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << px(fx) << "\" y=\"" << kHeight - kMarginB + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << num(fx)
        << "</text>\n";
    const double fyl = ymin + (ymax - ymin) * k / nticks;
    const double yc = kHeight - kMarginB -
                      (fyl - ymin) / (ymax - ymin) * (kHeight - kMarginT - kMarginB);
    out << "<line x1=\"" << kMarginL - 5 << "\" y1=\"" << yc << "\" x2=\""
        << kMarginL << "\" y2=\"" << yc << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kMarginL - 8 << "\" y=\"" << yc + 4
        << "\" text-anchor=\"end\" font-size=\"11\">"
        << (log_y ? "1e" + num(fyl) : num(fyl)) << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << esc(xlabel)
      << "</text>\n"
      << "<text x=\"16\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << kHeight / 2 << ")\">" << esc(ylabel) << "</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    std::ostringstream pts;
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (log_y && !(s.y[i] > 0.0)) continue;
      pts << px(s.x[i]) << "," << py(s.y[i]) << " ";
    }
    out << "<polyline fill=\"none\" stroke=\"" << kColors[si % 6]
        << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
    out << "<text x=\"" << kWidth - kMarginR - 6 << "\" y=\""
        << kMarginT + 16 + 16 * si << "\" text-anchor=\"end\" font-size=\"12\" "
        << "fill=\"" << kColors[si % 6] << "\">" << esc(s.label) << "</text>\n";
  }
  out << "</svg>\n";
}

void svg_heatmap(const std::string& path, const std::string& title, int nx,
                 int ny, int i0, int i1, const std::vector<double>& vertex_values) {
  if (static_cast<int>(vertex_values.size()) != (nx + 1) * (ny + 1))
    throw std::invalid_argument("svg_heatmap: vertex value count mismatch");
  double vmin = 1e300, vmax = -1e300;
  for (int j = 0; j <= ny; ++j)
    for (int i = i0; i <= i1; ++i) {
      const double v = vertex_values[j * (nx + 1) + i];
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
  if (vmax <= vmin) vmax = vmin + 1;

  const int cell = std::max(2, 400 / std::max(i1 - i0, ny));
  const int w = (i1 - i0) * cell + 120, h = ny * cell + 70;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("svg_heatmap: cannot write '" + path + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" font-family=\"sans-serif\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" "
         "font-size=\"14\">" << esc(title) << "</text>\n";
  for (int j = 0; j < ny; ++j) {
    for (int i = i0; i < i1; ++i) {
      double acc = 0.0;
      for (int dj = 0; dj <= 1; ++dj)
        for (int di = 0; di <= 1; ++di)
          acc += vertex_values[(j + dj) * (nx + 1) + (i + di)];
      const double t = (acc / 4.0 - vmin) / (vmax - vmin);
      int r, g, b;
      color_ramp(t, r, g, b);
      out << "<rect x=\"" << 40 + (i - i0) * cell << "\" y=\""
          << 30 + (ny - 1 - j) * cell << "\" width=\"" << cell << "\" height=\""
          << cell << "\" fill=\"rgb(" << r << "," << g << "," << b << ")\"/>\n";
    }
  }
  out << "<text x=\"40\" y=\"" << h - 18 << "\" font-size=\"11\">min="
      << num(vmin) << "</text>\n"
      << "<text x=\"" << w - 10 << "\" y=\"" << h - 18
      << "\" text-anchor=\"end\" font-size=\"11\">max=" << num(vmax)
      << "</text>\n</svg>\n";
}

void report_from_dirs(const std::vector<std::string>& dirs,
                      const std::string& out_dir) {
  if (dirs.empty()) throw std::invalid_argument("report: need at least one run");
  fs::create_directories(out_dir);

  std::ostringstream table_txt, table_csv;
  table_txt << "+-----------+----------+--------------+---------------+\n"
            << "| Problem   | Method   | Error eps    | Online time   |\n"
            << "+-----------+----------+--------------+---------------+\n";
  table_csv << "problem,config_hash,method,eps_u,mean_seconds_per_sample\n";

  for (const auto& dir : dirs) {
    std::ifstream sin(dir + "/summary.json");
    if (!sin) throw std::runtime_error("report: missing summary.json in " + dir);
    json summary = json::parse(sin);
    const std::string hash = summary.at("config_hash");
    const std::string problem = summary.at("problem");
    const double eps_u = summary.at("eps_u");
    const double t_rom = summary.at("timing").at("mean_online_seconds");
    const double t_ref = summary.at("timing").at("mean_fembe_seconds");

    char row[256];
    std::snprintf(row, sizeof(row),
                  "| %-9s | %-8s | %-12.3e | %-11.3e s |\n", problem.c_str(),
                  "FT-DD-VS", eps_u, t_rom);
    table_txt << row;
    std::snprintf(row, sizeof(row), "| %-9s | %-8s | %-12s | %-11.3e s |\n",
                  problem.c_str(), "FEM-BE", "--", t_ref);
    table_txt << row;
    table_txt << "+-----------+----------+--------------+---------------+\n";
    table_csv << problem << "," << hash << ",ft-dd-vs," << eps_u << "," << t_rom
              << "\n";
    table_csv << problem << "," << hash << ",fem-be,," << t_ref << "\n";

    const std::string key = out_dir + "/report_" + hash;

    {
      const Csv samples = read_csv(dir + "/samples.csv");
      PlotSeries s;
      s.label = "relative error";
      const size_t n = std::min<size_t>(samples.rows.size(), 100);
      for (size_t i = 0; i < n; ++i) {
        s.x.push_back(samples.rows[i][0]);
        s.y.push_back(samples.rows[i].back());
      }
      svg_line_plot(key + "_sample_errors.svg",
                    problem + ": errors for the first 100 samples",
                    "sample index", "relative error", {s}, true);
    }
    {
      const Csv curve = read_csv(dir + "/error_vs_time.csv");
      PlotSeries s;
      s.label = "mean relative error";
      for (const auto& row : curve.rows) {
        s.x.push_back(row[0]);
        s.y.push_back(row[1]);
      }
      svg_line_plot(key + "_error_vs_time.svg",
                    problem + ": average relative error versus time", "t",
                    "relative error", {s}, true);
    }
    if (fs::exists(dir + "/field_t_final.csv")) {
      const int nx = summary.at("nx"), ny = summary.at("ny");
      const Csv field = read_csv(dir + "/field_t_final.csv");
      // Rows are vertex-indexed (boundary zeros included).
      std::vector<double> rom((nx + 1) * (ny + 1), 0.0), ref = rom;
      for (const auto& row : field.rows) {
        const int v = static_cast<int>(row[0]);
        rom[v] = row[1];
        ref[v] = row[2];
      }
      svg_heatmap(key + "_field_rom_d1.svg", problem + ": FT-DD-VS, D1, t=T",
                  nx, ny, 0, nx / 2, rom);
      svg_heatmap(key + "_field_rom_d2.svg", problem + ": FT-DD-VS, D2, t=T",
                  nx, ny, nx / 2, nx, rom);
      svg_heatmap(key + "_field_fembe_d1.svg", problem + ": FEM-BE, D1, t=T",
                  nx, ny, 0, nx / 2, ref);
      svg_heatmap(key + "_field_fembe_d2.svg", problem + ": FEM-BE, D2, t=T",
                  nx, ny, nx / 2, nx, ref);
    }
    for (const char* q : {"n_s", "n_f", "n_gamma", "n_i"}) {
      const std::string decay = dir + "/decay_" + q + ".csv";
      if (!fs::exists(decay)) continue;
      const Csv curve = read_csv(decay);
      PlotSeries s;
      s.label = std::string("decay ") + q;
      for (const auto& row : curve.rows) {
        s.x.push_back(row[0]);
        s.y.push_back(row[1]);
      }
      svg_line_plot(key + "_decay_" + q + ".svg",
                    problem + ": average relative error versus separate terms",
                    "number of separate terms", "relative error", {s}, true);
    }
  }

  std::ofstream(out_dir + "/report_table.txt") << table_txt.str();
  std::ofstream(out_dir + "/report_table.csv") << table_csv.str();
}

}  // namespace ftddvs
