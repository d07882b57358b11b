// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <set>

#include "test_util.hpp"

using namespace ftddvs;

TEST_CASE("build_mesh counts and geometry") {
  const Mesh2D m = build_mesh(2, 2);
  CHECK(m.n_vertices() == 9);
  CHECK(m.n_triangles() == 8);
  for (int t = 0; t < m.n_triangles(); ++t) CHECK(m.signed_area(t) > 0.0);

  const Mesh2D fine = build_mesh(50, 50);
  CHECK(fine.n_vertices() == 51 * 51);
  CHECK(fine.vertices[fine.vertex_id(1, 0)][0] == doctest::Approx(0.02));

  const Mesh2D ex2 = build_mesh(20, 20);
  CHECK(ex2.vertices[ex2.vertex_id(1, 0)][0] == doctest::Approx(0.05));

  CHECK_THROWS_AS(build_mesh(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(4, 0), std::invalid_argument);
}

TEST_CASE("boundary flags mark exactly the boundary vertices") {
  const Mesh2D m = build_mesh(4, 6);
  for (int j = 0; j <= m.ny; ++j)
    for (int i = 0; i <= m.nx; ++i) {
      const bool expect = i == 0 || i == m.nx || j == 0 || j == m.ny;
      CHECK(m.boundary_flags[m.vertex_id(i, j)] == expect);
    }
}

TEST_CASE("partition splits free dofs disjointly along x1=0.5") {
  const Mesh2D m = build_mesh(8, 6);
  const DomainPartition p = build_partition(m);
  CHECK(p.n_interface() == m.ny - 1);
  CHECK(p.n_interior(0) == (m.nx / 2 - 1) * (m.ny - 1));
  CHECK(p.n_interior(1) == (m.nx / 2 - 1) * (m.ny - 1));

  std::set<int> all;
  for (int d : p.interior_dofs[0]) all.insert(d);
  for (int d : p.interior_dofs[1]) all.insert(d);
  for (int d : p.interface_dofs) all.insert(d);
  CHECK(static_cast<int>(all.size()) == m.n_free());

  for (int j = 0; j < 2; ++j) {
    std::set<int> image(p.restriction_maps[j].begin(), p.restriction_maps[j].end());
    CHECK(static_cast<int>(image.size()) == p.n_interface());
    CHECK(*image.begin() == 0);
    CHECK(*image.rbegin() == p.n_interface() - 1);
  }

  CHECK_THROWS_AS(build_partition(build_mesh(5, 4)), std::invalid_argument);
}

TEST_CASE("heat stiffness has the five-point structure with per-subdomain c") {
  auto s = test::make_setup("heat", 8, 8);
  // alpha = (xi_1 on D1, 2 xi_2 on D2) with xi = (1,1).
  ParameterPoint mu{0.0, Vec::Constant(2, 1.0)};
  SpMat A(s.asm_.n_free(), s.asm_.n_free());
  for (const auto& term : s.asm_.op.terms)
    A += s.problem.op_terms[term.problem_term].alpha(mu) * term.mat;
  const Mat dense(A);

  const auto dof = free_dof_map(s.mesh);
  // An interior vertex well inside D1 (c=1): diagonal 4, cross neighbors -1.
  const int d1 = dof[s.mesh.vertex_id(2, 4)];
  CHECK(dense(d1, d1) == doctest::Approx(4.0));
  CHECK(dense(d1, dof[s.mesh.vertex_id(1, 4)]) == doctest::Approx(-1.0));
  CHECK(dense(d1, dof[s.mesh.vertex_id(2, 3)]) == doctest::Approx(-1.0));
  // Well inside D2 (c=2): scaled by 2.
  const int d2 = dof[s.mesh.vertex_id(6, 4)];
  CHECK(dense(d2, d2) == doctest::Approx(8.0));
  CHECK(dense(d2, dof[s.mesh.vertex_id(7, 4)]) == doctest::Approx(-2.0));
}

TEST_CASE("rd2 subdomain-1 operator term is the reaction mass block") {
  auto s = test::make_setup("rd2", 8, 8);
  REQUIRE(s.asm_.op.m_a() == 2);
  // Term 0 lives on D1 and is a scaled mass matrix there.
  const auto& t0 = s.asm_.op.terms[0];
  CHECK(t0.subdomain == 0);
  const Mat diff = Mat(t0.mat) - Mat(s.asm_.op.mass_sub[0]);
  CHECK(diff.norm() == doctest::Approx(0.0).epsilon(1e-14));
  // At xi = (3,3) its coefficient is 100*xi_2 = 300 and there is no
  // diffusion contribution on D1.
  ParameterPoint mu{0.0, Vec::Constant(2, 3.0)};
  CHECK(s.problem.op_terms[0].alpha(mu) == doctest::Approx(300.0));
  CHECK(s.problem.op_terms[0].kind == OpTermDef::Kind::Reaction);
}

TEST_CASE("quadratic form matches per-triangle quadrature oracle") {
  auto s = test::make_setup("heat", 10, 10);
  Rng rng(7);
  ParameterPoint mu = test::random_mu(rng, s.problem, 20.0);

  // Nodal interpolant of sin(pi x1) sin(pi x2) on free dofs.
  Vec v(s.asm_.n_free());
  for (int d = 0; d < s.asm_.n_free(); ++d) {
    const auto& xy = s.mesh.vertices[s.asm_.free_vertex[d]];
    v[d] = std::sin(std::numbers::pi * xy[0]) * std::sin(std::numbers::pi * xy[1]);
  }
  SpMat A(s.asm_.n_free(), s.asm_.n_free());
  for (const auto& term : s.asm_.op.terms)
    A += s.problem.op_terms[term.problem_term].alpha(mu) * term.mat;
  const double form = v.dot(A * v);

  // Independent oracle: sum over triangles of c |grad v_h|^2 * area, with
  // the P1 gradient computed from vertex values directly.
  const auto dof = free_dof_map(s.mesh);
  double oracle = 0.0;
  for (int t = 0; t < s.mesh.n_triangles(); ++t) {
    const auto& tri = s.mesh.triangles[t];
    const auto& p0 = s.mesh.vertices[tri[0]];
    const auto& p1 = s.mesh.vertices[tri[1]];
    const auto& p2 = s.mesh.vertices[tri[2]];
    auto val = [&](int vtx) {
      return dof[vtx] >= 0 ? v[dof[vtx]] : 0.0;
    };
    const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) -
                       (p2[0] - p0[0]) * (p1[1] - p0[1]);
    const double area = 0.5 * det;
    const double gx = (val(tri[0]) * (p1[1] - p2[1]) + val(tri[1]) * (p2[1] - p0[1]) +
                       val(tri[2]) * (p0[1] - p1[1])) / det;
    const double gy = (val(tri[0]) * (p2[0] - p1[0]) + val(tri[1]) * (p0[0] - p2[0]) +
                       val(tri[2]) * (p1[0] - p0[0])) / det;
    const double c = triangle_subdomain(s.mesh, t) == 0 ? mu.xi[0] : 2.0 * mu.xi[1];
    oracle += c * (gx * gx + gy * gy) * area;
  }
  CHECK(form == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("affine evaluation equals direct frequency-form assembly") {
  auto s = test::make_setup("rd1", 6, 6);
  Rng rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    ParameterPoint mu = test::random_mu(rng, s.problem, 15.0);
    const CMat affine = CMat(SpCMat(evaluate_operator(s.asm_.op, s.problem, mu)));

    // Direct assembly with numeric coefficients per triangle.
    const auto dof = free_dof_map(s.mesh);
    Mat re = Mat::Zero(s.asm_.n_free(), s.asm_.n_free());
    Mat im = Mat::Zero(s.asm_.n_free(), s.asm_.n_free());
    for (int t = 0; t < s.mesh.n_triangles(); ++t) {
      const auto& tri = s.mesh.triangles[t];
      const auto& p0 = s.mesh.vertices[tri[0]];
      const auto& p1 = s.mesh.vertices[tri[1]];
      const auto& p2 = s.mesh.vertices[tri[2]];
      const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) -
                         (p2[0] - p0[0]) * (p1[1] - p0[1]);
      const double area = 0.5 * det;
      const double b[3] = {(p1[1] - p2[1]) / det, (p2[1] - p0[1]) / det,
                           (p0[1] - p1[1]) / det};
      const double c[3] = {(p2[0] - p1[0]) / det, (p0[0] - p2[0]) / det,
                           (p1[0] - p0[0]) / det};
      const int sd = triangle_subdomain(s.mesh, t);
      const double c1 = sd == 0 ? 100.0 * mu.xi[0] : 10.0 * mu.xi[1];
      const double c2 = sd == 0 ? mu.xi[2] : 0.1 * mu.xi[3];
      const double mloc[3][3] = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
      for (int a = 0; a < 3; ++a)
        for (int bb = 0; bb < 3; ++bb) {
          const int ra = dof[tri[a]], rb = dof[tri[bb]];
          if (ra < 0 || rb < 0) continue;
          re(ra, rb) += c1 * area * (b[a] * b[bb] + c[a] * c[bb]) +
                        c2 * area / 12.0 * mloc[a][bb];
          im(ra, rb) += mu.omega * area / 12.0 * mloc[a][bb];
        }
    }
    CHECK((affine.real() - re).norm() <= 1e-13 * re.norm());
    CHECK((affine.imag() - im).norm() <= 1e-13 * std::max(im.norm(), 1.0));
  }
}

TEST_CASE("mass matrix row sums are nodal areas summing to |D|") {
  auto s = test::make_setup("heat", 6, 4);
  const Vec ones = Vec::Ones(s.mesh.n_vertices());
  const Vec rowsum = s.asm_.full_mass * ones;
  CHECK(rowsum.sum() == doctest::Approx(1.0).epsilon(1e-13));
  for (int v = 0; v < s.mesh.n_vertices(); ++v) CHECK(rowsum[v] > 0.0);
}

TEST_CASE("patch test: stiffness annihilates constants before elimination") {
  auto s = test::make_setup("heat", 6, 6);
  const Vec ones = Vec::Ones(s.mesh.n_vertices());
  for (const auto& full : s.asm_.full_terms)
    CHECK((full * ones).lpNorm<Eigen::Infinity>() <= 1e-13);
}

TEST_CASE("system matrix invertible over the parameter box") {
  for (const char* id : {"heat", "rd1", "rd2"}) {
    auto s = test::make_setup(id, 4, 4);
    Rng rng(3);
    for (int trial = 0; trial < 5; ++trial) {
      ParameterPoint mu = test::random_mu(rng, s.problem, 15.0);
      if (trial == 0) mu.omega = 0.0;
      const CMat A = CMat(SpCMat(evaluate_operator(s.asm_.op, s.problem, mu)));
      const double smin =
          A.jacobiSvd().singularValues().tail(1)(0);
      CHECK(smin > 1e-10);
      // The real part alone is positive semidefinite.
      const Mat re = A.real();
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (re + re.transpose()));
      CHECK(es.eigenvalues().minCoeff() >= -1e-10 * es.eigenvalues().maxCoeff());
    }
  }
}

TEST_CASE("extract_blocks: reassembly, transpose symmetry, interface size") {
  auto s = test::make_setup("heat", 4, 4);
  CHECK(s.blocks[0].n_g() == 3);  // free dofs on x1 = 0.5

  for (int j = 0; j < 2; ++j) {
    const auto& bs = s.blocks[j];
    for (size_t n = 0; n < bs.A_IG.size(); ++n) {
      const Mat ig(bs.A_IG[n]);
      const Mat gi(bs.A_GI[n]);
      CHECK((gi - ig.transpose()).norm() == doctest::Approx(0.0));
    }
  }

  // Reassembling blocks reproduces the full matrix at random mu.
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const ParameterPoint mu = test::random_mu(rng, s.problem, 20.0);
    Mat re = Mat::Zero(s.asm_.n_free(), s.asm_.n_free());
    Mat im = Mat::Zero(s.asm_.n_free(), s.asm_.n_free());
    for (int j = 0; j < 2; ++j) {
      const auto& bs = s.blocks[j];
      auto scatter = [&](const SpMat& block, const std::vector<int>& rows,
                         const std::vector<int>& cols, Mat& target, double w) {
        const Mat d(block);
        for (size_t a = 0; a < rows.size(); ++a)
          for (size_t b = 0; b < cols.size(); ++b)
            target(rows[a], cols[b]) += w * d(a, b);
      };
      for (size_t n = 0; n < bs.A_II.size(); ++n) {
        const double alpha = s.problem.op_terms[bs.op_term_index[n]].alpha(mu);
        scatter(bs.A_II[n], bs.interior, bs.interior, re, alpha);
        scatter(bs.A_IG[n], bs.interior, bs.interface, re, alpha);
        scatter(bs.A_GI[n], bs.interface, bs.interior, re, alpha);
        scatter(bs.A_GG[n], bs.interface, bs.interface, re, alpha);
      }
      scatter(bs.M_II, bs.interior, bs.interior, im, mu.omega);
      scatter(bs.M_IG, bs.interior, bs.interface, im, mu.omega);
      scatter(bs.M_GI, bs.interface, bs.interior, im, mu.omega);
      scatter(bs.M_GG, bs.interface, bs.interface, im, mu.omega);
    }
    const CMat full = CMat(SpCMat(evaluate_operator(s.asm_.op, s.problem, mu)));
    CHECK((full.real() - re).norm() <= 1e-12 * std::max(1.0, re.norm()));
    CHECK((full.imag() - im).norm() <= 1e-12 * std::max(1.0, im.norm()));
  }

  CHECK_THROWS_AS(extract_blocks(s.asm_, s.part, 2), std::out_of_range);
}

TEST_CASE("assemble rejects odd nx and malformed problems") {
  const Mesh2D odd = build_mesh(5, 4);
  CHECK_THROWS_AS(assemble(make_problem("heat"), odd), std::invalid_argument);

  ProblemDefinition bad = make_problem("heat");
  bad.op_terms[1].tag = bad.op_terms[0].tag;  // duplicate tag
  CHECK_THROWS_AS(assemble(bad, build_mesh(4, 4)), std::invalid_argument);

  ProblemDefinition missing = make_problem("heat");
  missing.op_terms[0].alpha = nullptr;  // unresolvable coefficient
  CHECK_THROWS_AS(assemble(missing, build_mesh(4, 4)), std::invalid_argument);
}
