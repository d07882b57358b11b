// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/frequency.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "core/instrument.hpp"

namespace ftddvs {

namespace {
// 16-point Gauss-Legendre rule on [-1,1] (one half; symmetric).
constexpr int kGlHalf = 8;
constexpr double kGlX[kGlHalf] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026437, 0.7554044083550030, 0.8656312023878317,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGlW[kGlHalf] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};
}  // namespace

void lgl_reference(int n_points, std::vector<double>& x, std::vector<double>& w) {
  if (n_points < 2)
    throw std::invalid_argument("lgl_reference: need at least 2 points");
  const int n1 = n_points;
  const int n = n_points - 1;
  x.assign(n1, 0.0);
  w.assign(n1, 0.0);
  std::vector<double> xold(n1), P(n1 * n1, 0.0);
  for (int i = 0; i < n1; ++i)
    x[i] = std::cos(std::numbers::pi * (n1 - i - 1) / double(n));

  double err = 1.0;
  int iter = 0;
  do {
    for (int i = 0; i < n1; ++i) {
      xold[i] = x[i];
      P[i] = 1.0;
      P[n1 + i] = x[i];
    }
    for (int j = 2; j < n1; ++j)
      for (int i = 0; i < n1; ++i)
        P[j * n1 + i] =
            ((2 * j - 1) * x[i] * P[(j - 1) * n1 + i] - (j - 1) * P[(j - 2) * n1 + i]) / j;
    for (int i = 0; i < n1; ++i)
      x[i] = xold[i] - (x[i] * P[n * n1 + i] - P[(n - 1) * n1 + i]) / (n1 * P[n * n1 + i]);
    err = 0.0;
    for (int i = 0; i < n1; ++i) err = std::max(err, std::abs(xold[i] - x[i]));
    if (++iter > 200)
      throw std::runtime_error("lgl_reference: node iteration did not converge");
  } while (err > 1e-15);

  for (int i = 0; i < n1; ++i)
    w[i] = 2.0 / (double(n) * n1 * P[n * n1 + i] * P[n * n1 + i]);
  // Pin the endpoints exactly.
  x.front() = -1.0;
  x.back() = 1.0;
}

FrequencyGrid lgl_grid(int n_omega, double omega_max) {
  if (n_omega < 2) throw std::invalid_argument("lgl_grid: n_omega must be >= 2");
  if (!(omega_max > 0.0))
    throw std::invalid_argument("lgl_grid: omega_max must be positive");
  FrequencyGrid grid;
  grid.omega_max = omega_max;
  grid.n_omega = n_omega;
  std::vector<double> x, w;
  lgl_reference(n_omega, x, w);
  grid.nodes.resize(n_omega);
  grid.weights.resize(n_omega);
  for (int i = 0; i < n_omega; ++i) {
    grid.nodes[i] = 0.5 * (x[i] + 1.0) * omega_max;
    grid.weights[i] = 0.5 * omega_max * w[i];
  }
  grid.nodes.front() = 0.0;
  grid.nodes.back() = omega_max;
  return grid;
}

Complex forward_time_transform(const std::function<double(double)>& profile,
                               double omega, double T, double rel_tol) {
  auto integrate = [&](int panels) {
    Complex sum(0.0, 0.0);
    const double hp = T / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = (p + 0.5) * hp;
      for (int q = 0; q < kGlHalf; ++q) {
        for (int sgn = -1; sgn <= 1; sgn += 2) {
          const double t = mid + sgn * 0.5 * hp * kGlX[q];
          const double ft = profile(t);
          sum += 0.5 * hp * kGlW[q] * ft * Complex(std::cos(omega * t), -std::sin(omega * t));
          count_scalar(4);
        }
      }
    }
    return sum;
  };

  int panels = 4;
  Complex prev = integrate(panels);
  for (int round = 0; round < 16; ++round) {
    panels *= 2;
    const Complex cur = integrate(panels);
    if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-300))
      return cur;
    prev = cur;
  }
  return prev;
}

Vec inverse_transform(const std::vector<CVec>& hat_values,
                      const FrequencyGrid& grid, double t) {
  if (static_cast<int>(hat_values.size()) != grid.n_omega)
    throw std::invalid_argument(
        "inverse_transform: hat_values length must equal the grid size");
  const auto n = hat_values.empty() ? 0 : hat_values[0].size();
  CVec acc = CVec::Zero(n);
  for (int j = 0; j < grid.n_omega; ++j) {
    const double w = grid.weights[j];
    const double ph = grid.nodes[j] * t;
    acc += hat_values[j] * (w * Complex(std::cos(ph), std::sin(ph)));
    count_vector(static_cast<std::uint64_t>(n));
  }
  return acc.real() / std::numbers::pi;
}

double cutoff_tail_ratio(const std::vector<CVec>& hat_values) {
  if (hat_values.empty()) return 0.0;
  double peak = 0.0;
  for (const auto& v : hat_values) peak = std::max(peak, v.norm());
  if (peak == 0.0) return 0.0;
  return hat_values.back().norm() / peak;
}

}  // namespace ftddvs
