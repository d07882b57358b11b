// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/reference.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace ftddvs {

CVec direct_frequency_solve(const Assembly& asm_, const CoeffContext& ctx,
                            const ParameterPoint& mu) {
  const SpCMat A = evaluate_operator(asm_.op, *ctx.problem, mu);
  CVec b = CVec::Zero(asm_.n_free());
  for (const auto& term : asm_.rhs.terms) {
    const double re = ctx.eval(CoeffDesc::src_re(term.source_index), mu);
    const double im = ctx.eval(CoeffDesc::src_im(term.source_index), mu);
    b += Complex(re, im) * term.F.cast<Complex>();
  }
  Eigen::SparseLU<SpCMat> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("direct_frequency_solve: singular system matrix");
  const CVec u = lu.solve(b);
  const double bn = b.norm();
  if (bn > 0.0) {
    const double res = (A * u - b).norm() / bn;
    if (!(res <= 1e-10))
      throw std::runtime_error(
          "direct_frequency_solve: solve residual exceeds 1e-10");
  }
  return u;
}

FemBeTiming fem_be_stream(const Assembly& asm_, const ProblemDefinition& problem,
                          const Vec& xi, double tau,
                          const std::function<void(int, double, const Vec&)>& on_step) {
  if (!(tau > 0.0)) throw std::invalid_argument("fem_be_stream: tau must be positive");
  const double T = problem.final_time;
  const int nt = static_cast<int>(std::llround(T / tau));
  if (std::abs(nt * tau - T) > 1e-9 * T)
    throw std::invalid_argument("fem_be_stream: T/tau must be integral");

  using Clock = std::chrono::steady_clock;
  FemBeTiming timing;
  timing.steps = nt;
  const auto t0 = Clock::now();

  const int n = asm_.n_free();
  ParameterPoint mu0{0.0, xi};
  SpMat A(n, n);
  for (const auto& term : asm_.op.terms)
    A += problem.op_terms[term.problem_term].alpha(mu0) * term.mat;
  const SpMat step_matrix = asm_.op.mass / tau + A;
  Eigen::SimplicialLDLT<SpMat> solver;
  solver.compute(step_matrix);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("fem_be_stream: step matrix factorization failed");

  Vec u = Vec::Zero(n);
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  };
  timing.solver_seconds = elapsed();
  on_step(0, 0.0, u);

  std::vector<double> sigma(problem.m_b());
  for (int q = 0; q < problem.m_b(); ++q) sigma[q] = problem.sources[q].sigma(xi);

  for (int m = 1; m <= nt; ++m) {
    const double before = elapsed();
    const double t = m * tau;
    Vec rhs = asm_.op.mass * u / tau;
    for (int q = 0; q < problem.m_b(); ++q)
      rhs += sigma[q] * problem.sources[q].time_profile(t) * asm_.rhs.terms[q].F;
    u = solver.solve(rhs);
    timing.solver_seconds += elapsed() - before;
    on_step(m, t, u);
  }
  return timing;
}

Mat fem_be_solve(const Assembly& asm_, const ProblemDefinition& problem,
                 const Vec& xi, double tau) {
  const int nt = static_cast<int>(std::llround(problem.final_time / tau));
  Mat traj(asm_.n_free(), nt + 1);
  fem_be_stream(asm_, problem, xi, tau,
                [&](int m, double, const Vec& u) { traj.col(m) = u; });
  return traj;
}

}  // namespace ftddvs
