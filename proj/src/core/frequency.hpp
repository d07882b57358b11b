// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "core/types.hpp"

namespace ftddvs {

/// Legendre-Gauss-Lobatto quadrature grid on [0, omega_max], used to
/// discretize the inverse Fourier integral over the positive half-axis.
struct FrequencyGrid {
  double omega_max = 0.0;
  int n_omega = 0;
  std::vector<double> nodes;    // ascending, nodes.front()==0, back()==omega_max
  std::vector<double> weights;  // sum equals omega_max
};

/// LGL nodes/weights on [-1,1] (n_points >= 2), Newton iteration on the
/// Legendre recurrence.
void lgl_reference(int n_points, std::vector<double>& x, std::vector<double>& w);

FrequencyGrid lgl_grid(int n_omega, double omega_max);

/// integral_0^T profile(t) exp(-i omega t) dt by composite Gauss-Legendre
/// quadrature with panel doubling until the result is stable to rel_tol.
Complex forward_time_transform(const std::function<double(double)>& profile,
                               double omega, double T, double rel_tol = 1e-10);

/// (1/pi) Re( sum_j uhat_j exp(i omega_j t) w_j ), Eq. of the LGL inverse
/// transform. The 1/pi and the real part account for the negative-frequency
/// half of a real signal.
Vec inverse_transform(const std::vector<CVec>& hat_values,
                      const FrequencyGrid& grid, double t);

/// Tail diagnostic ||uhat(omega_max)|| / max_j ||uhat(omega_j)||; the cutoff
/// is adequate when this is small.
double cutoff_tail_ratio(const std::vector<CVec>& hat_values);

}  // namespace ftddvs
