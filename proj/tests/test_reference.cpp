// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SparseLU>
#include <cmath>
#include <numbers>

#include "core/frequency.hpp"
#include "core/pipeline.hpp"
#include "core/reference.hpp"
#include "test_util.hpp"

using namespace ftddvs;

TEST_CASE("analytical heat solution values") {
  CHECK(analytical_heat(0.3, 0.7, 0.0) == 0.0);
  CHECK(analytical_heat(0.0, 0.5, 0.8) == doctest::Approx(0.0));
  CHECK(analytical_heat(0.5, 1.0, 0.8) == doctest::Approx(0.0));
  CHECK(analytical_heat(0.5, 0.5, 1.0) ==
        doctest::Approx(1.0 / (2.0 * std::numbers::pi)));
}

TEST_CASE("fem_be: zero source gives the zero trajectory") {
  ProblemDefinition prob = make_problem("heat");
  prob.sources.clear();
  const Mesh2D mesh = build_mesh(6, 6);
  const Assembly asm_ = assemble(prob, mesh);
  const Mat traj = fem_be_solve(asm_, prob, Vec::Constant(2, 1.5), 0.05);
  CHECK(traj.norm() == 0.0);
  CHECK(traj.cols() == 21);
}

TEST_CASE("fem_be rejects a non-integral step count") {
  const auto s = test::make_setup("heat", 4, 4);
  CHECK_THROWS_AS(fem_be_solve(s.asm_, s.problem, Vec::Constant(2, 1.0), 0.3),
                  std::invalid_argument);
}

TEST_CASE("fem_be matches the analytical heat solution") {
  const auto s = test::make_setup("heat", 20, 20);
  const Vec xi = Vec::Constant(2, 1.3);
  const double tau = 5e-4;
  const Mat traj = fem_be_solve(s.asm_, s.problem, xi, tau);

  Mat exact(traj.rows(), traj.cols());
  for (int m = 0; m < traj.cols(); ++m) {
    for (int d = 0; d < s.asm_.n_free(); ++d) {
      const auto& xy = s.mesh.vertices[s.asm_.free_vertex[d]];
      exact(d, m) = analytical_heat(xy[0], xy[1], m * tau);
    }
  }
  const double err =
      trajectory_relative_error(traj, exact, s.asm_.op.mass, tau);
  CHECK(err < 5e-3);  // O(h^2 + tau) at h = 0.05
}

TEST_CASE("fem_be time error scales linearly in tau") {
  const auto s = test::make_setup("heat", 10, 10);
  const Vec xi = Vec::Constant(2, 1.8);
  const Mat t1 = fem_be_solve(s.asm_, s.problem, xi, 0.02);
  const Mat t2 = fem_be_solve(s.asm_, s.problem, xi, 0.01);
  const Mat t3 = fem_be_solve(s.asm_, s.problem, xi, 0.005);
  // Richardson: ||u_tau - u_{tau/2}|| ~ C tau/2.
  auto diff_at_T = [&](const Mat& a, const Mat& b) {
    return (a.rightCols(1) - b.rightCols(1)).norm();
  };
  const double r = diff_at_T(t1, t2) / diff_at_T(t2, t3);
  CHECK(r > 1.6);
  CHECK(r < 2.6);
}

TEST_CASE("fem_be energy stays bounded") {
  const auto s = test::make_setup("rd1", 8, 8);
  const Vec xi = Vec::Constant(4, 1.5);
  double max_energy = 0.0;
  fem_be_stream(s.asm_, s.problem, xi, 1e-2, [&](int, double, const Vec& u) {
    max_energy = std::max(max_energy, std::sqrt(u.dot(s.asm_.op.mass * u)));
  });
  CHECK(std::isfinite(max_energy));
  // The source is bounded by e^{20}; the trajectory must stay comparable.
  CHECK(max_energy < 1e12);
}

TEST_CASE("direct frequency solve: omega = 0 equals the real solve") {
  const auto s = test::make_setup("heat", 8, 8);
  const CoeffContext ctx = s.ctx();
  const ParameterPoint mu{0.0, Vec::Constant(2, 1.2)};
  const CVec u = direct_frequency_solve(s.asm_, ctx, mu);
  CHECK(u.imag().norm() <= 1e-13 * u.real().norm());

  SpMat A(s.asm_.n_free(), s.asm_.n_free());
  for (const auto& term : s.asm_.op.terms)
    A += s.problem.op_terms[term.problem_term].alpha(mu) * term.mat;
  Vec b = Vec::Zero(s.asm_.n_free());
  for (const auto& term : s.asm_.rhs.terms)
    b += ctx.eval(CoeffDesc::src_re(term.source_index), mu) * term.F;
  Eigen::SparseLU<SpMat> lu;
  lu.compute(A);
  const Vec expect = lu.solve(b);
  CHECK((u.real() - expect).norm() <= 1e-12 * expect.norm());
}

TEST_CASE("direct frequency solve has conjugate symmetry in omega") {
  const auto s = test::make_setup("rd2", 8, 8);
  const CoeffContext ctx = s.ctx();
  Rng rng(77);
  const Vec xi = rng.uniform_in(s.problem.box);
  const double omega = 6.5;
  const CVec plus = direct_frequency_solve(s.asm_, ctx, {omega, xi});
  const CVec minus = direct_frequency_solve(s.asm_, ctx, {-omega, xi});
  CHECK((minus - plus.conjugate()).norm() <= 1e-12 * plus.norm());
}

TEST_CASE("frequency solve matches the transform of the analytical heat solution") {
  // The transform of (1/pi) t/(1+t^2) sin sin is -i sgn(w) exp(-|w|) sin sin,
  // so the discrete frequency solution must match that interpolant to O(h^2)
  // at any xi (the analytical solution is xi-independent by construction).
  auto transform_error = [](int nx, double omega) {
    const auto s = test::make_setup("heat", nx, nx);
    const CoeffContext ctx = s.ctx();
    const Vec xi = Vec::Constant(2, 1.45);
    const int n = s.asm_.n_free();

    CVec oracle(n);
    const Complex coef(0.0, -std::exp(-std::abs(omega)) *
                                (omega > 0 ? 1.0 : (omega < 0 ? -1.0 : 0.0)));
    for (int d = 0; d < n; ++d) {
      const auto& xy = s.mesh.vertices[s.asm_.free_vertex[d]];
      oracle[d] = coef * std::sin(std::numbers::pi * xy[0]) *
                  std::sin(std::numbers::pi * xy[1]);
    }
    const CVec solved = direct_frequency_solve(s.asm_, ctx, {omega, xi});
    return (solved - oracle).norm() / oracle.norm();
  };

  const double coarse = transform_error(10, 4.0);
  const double fine = transform_error(20, 4.0);
  CHECK(coarse < 0.05);  // O(h^2) at h = 0.1
  const double ratio = coarse / fine;
  CHECK(ratio > 2.0);    // second-order decay under refinement
  CHECK(ratio < 8.0);
}
