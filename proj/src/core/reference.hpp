// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "core/assembly.hpp"
#include "core/coeff.hpp"

namespace ftddvs {

/// Monolithic sparse complex direct solve of the frequency-domain system at
/// one mu; relative residual is verified to 1e-10.
CVec direct_frequency_solve(const Assembly& asm_, const CoeffContext& ctx,
                            const ParameterPoint& mu);

/// Backward-Euler trajectory (M/tau + A(xi)) u^m = M u^{m-1}/tau + f^m,
/// u^0 = 0, with the load evaluated at t_m. Invokes `on_step` for every
/// step m = 0..nt (including the initial state).
struct FemBeTiming {
  double solver_seconds = 0.0;  // factorization + stepping, excluding callbacks
  int steps = 0;
};
FemBeTiming fem_be_stream(const Assembly& asm_, const ProblemDefinition& problem,
                          const Vec& xi, double tau,
                          const std::function<void(int, double, const Vec&)>& on_step);

/// Dense trajectory (n_free x (nt+1)); column m holds u(t_m).
Mat fem_be_solve(const Assembly& asm_, const ProblemDefinition& problem,
                 const Vec& xi, double tau);

}  // namespace ftddvs
