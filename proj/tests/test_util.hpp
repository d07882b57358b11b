// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/SparseLU>

#include "core/assembly.hpp"
#include "core/coeff.hpp"
#include "core/mesh.hpp"
#include "core/param.hpp"
#include "core/problem.hpp"

namespace ftddvs::test {

/// Discretized problem bundle for tests.
struct Setup {
  ProblemDefinition problem;
  Mesh2D mesh;
  DomainPartition part;
  Assembly asm_;
  BlockSet blocks[2];

  CoeffContext ctx() const {
    CoeffContext c;
    c.problem = &problem;
    return c;
  }
};

inline Setup make_setup(const std::string& id, int nx, int ny) {
  Setup s;
  s.problem = make_problem(id);
  s.mesh = build_mesh(nx, ny);
  s.part = build_partition(s.mesh);
  s.asm_ = assemble(s.problem, s.mesh);
  s.blocks[0] = extract_blocks(s.asm_, s.part, 0);
  s.blocks[1] = extract_blocks(s.asm_, s.part, 1);
  return s;
}

inline ParameterPoint random_mu(Rng& rng, const ProblemDefinition& problem,
                                double omega_max) {
  return {rng.uniform(0.0, omega_max), rng.uniform_in(problem.box)};
}

/// Monolithic dense-free complex solve oracle (independent of the solver
/// modules: assembles and factorizes here).
inline CVec monolithic_solve(const Setup& s, const ParameterPoint& mu) {
  const CoeffContext ctx = s.ctx();
  SpCMat A = evaluate_operator(s.asm_.op, s.problem, mu);
  CVec b = CVec::Zero(s.asm_.n_free());
  for (const auto& term : s.asm_.rhs.terms) {
    const double re = ctx.eval(CoeffDesc::src_re(term.source_index), mu);
    const double im = ctx.eval(CoeffDesc::src_im(term.source_index), mu);
    b += Complex(re, im) * term.F.cast<Complex>();
  }
  Eigen::SparseLU<SpCMat> lu;
  lu.compute(A);
  return lu.solve(b);
}

}  // namespace ftddvs::test
