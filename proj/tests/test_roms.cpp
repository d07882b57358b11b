// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "core/instrument.hpp"
#include "core/pipeline.hpp"
#include "core/reference.hpp"
#include "test_util.hpp"

using namespace ftddvs;

namespace {

RunConfig desk(const std::string& name) {
  RunConfig cfg = preset(name);
  cfg.nx = cfg.ny = 10;
  cfg.eval_samples = 8;
  return cfg;
}

}  // namespace

TEST_CASE("interface ROM reproduces its first snapshot") {
  const RunConfig cfg = desk("rd1");
  const OfflineModel model = run_offline(cfg);
  const CoeffContext ctx = model.context();

  const auto& sep = model.interface_rom.sep;
  REQUIRE(sep.n_terms() >= 1);
  const ParameterPoint mu1 = sep.chosen_samples[0];
  const CVec approx = sep.evaluate_vector(ctx, mu1);
  CVec snapshot(sep.n);
  snapshot.real() = sep.modes_re[0].col(0);
  snapshot.imag() = sep.modes_im[0].col(0);
  CHECK((approx - snapshot).norm() <= 1e-12 * snapshot.norm());
}

TEST_CASE("interface ROM tracks the dense affine interface solve") {
  const RunConfig cfg = desk("heat");
  const OfflineModel model = run_offline(cfg);
  const CoeffContext ctx = model.context();

  Rng rng(606);
  double mean = 0.0;
  const int trials = 20;
  for (int k = 0; k < trials; ++k) {
    const ParameterPoint mu = test::random_mu(rng, model.problem, cfg.omega_max);
    const CMat S = model.schur.evaluate(ctx, mu);
    const CVec F = model.load.evaluate(ctx, mu);
    const CVec ref = Eigen::PartialPivLU<CMat>(S).solve(F);
    const CVec approx = model.interface_rom.sep.evaluate_vector(ctx, mu);
    mean += (approx - ref).norm() / ref.norm() / trials;
  }
  CHECK(mean < 1e-3);
}

TEST_CASE("subdomain ROM reproduces its first snapshot") {
  const RunConfig cfg = desk("heat");
  const OfflineModel model = run_offline(cfg);
  const CoeffContext ctx = model.context();
  for (int j = 0; j < 2; ++j) {
    const auto& sep = model.sub_rom[j].sep;
    REQUIRE(sep.n_terms() >= 1);
    const ParameterPoint mu1 = sep.chosen_samples[0];
    const CVec approx = sep.evaluate_vector(ctx, mu1);
    CVec snapshot(sep.n);
    snapshot.real() = sep.modes_re[0].col(0);
    snapshot.imag() = sep.modes_im[0].col(0);
    CHECK((approx - snapshot).norm() <= 1e-11 * snapshot.norm());
  }
}

TEST_CASE("full field tracks the monolithic solve at held-out mu") {
  for (const char* name : {"heat", "rd1", "rd2"}) {
    const RunConfig cfg = desk(name);
    const OfflineModel model = run_offline(cfg);
    const CoeffContext ctx = model.context();

    Rng rng(4242);
    double mean = 0.0;
    const int trials = 10;
    for (int k = 0; k < trials; ++k) {
      const ParameterPoint mu =
          test::random_mu(rng, model.problem, cfg.omega_max);
      const CVec approx = model.evaluate_hat(ctx, mu);
      const CVec mono = direct_frequency_solve(model.assembly, ctx, mu);
      mean += (approx - mono).norm() / mono.norm() / trials;
    }
    INFO("problem ", name);
    CHECK(mean < 5e-3);
  }
}

TEST_CASE("zero sources propagate zero through the whole pipeline") {
  RunConfig cfg = desk("heat");
  OfflineModel model;
  model.config = cfg;
  model.rebuild_discretization();
  model.problem.sources.clear();
  model.assembly = assemble(model.problem, model.mesh);
  model.blocks[0] = extract_blocks(model.assembly, model.partition, 0);
  model.blocks[1] = extract_blocks(model.assembly, model.partition, 1);

  CoeffContext ctx;
  ctx.problem = &model.problem;
  const SampleSet samples = draw_training_samples(model.problem, 5,
                                                  cfg.omega_max, cfg.train_seed);
  for (int j = 0; j < 2; ++j) {
    model.x[j] = approximate_x(model.blocks[j], samples, ctx, {1e-10, 4});
    model.yload[j] =
        approximate_interior_load(model.blocks[j], samples, ctx, {1e-10, 4});
  }
  model.schur = assemble_affine_s(model.blocks[0], model.blocks[1], model.x[0],
                                  model.x[1]);
  model.load = assemble_affine_f(model.blocks[0], model.blocks[1],
                                 model.yload[0], model.yload[1]);
  ctx = model.context();
  model.interface_rom =
      build_interface_rom(model.schur, model.load, samples, ctx, {1e-10, 4});
  ctx = model.context();
  for (int j = 0; j < 2; ++j)
    model.sub_rom[j] = build_subdomain_rom(model.blocks[j],
                                           model.interface_rom.sep, samples,
                                           ctx, {1e-10, 4});
  ctx = model.context();

  Rng rng(3);
  const ParameterPoint mu = test::random_mu(rng, model.problem, cfg.omega_max);
  CHECK(model.interface_rom.sep.evaluate_vector(ctx, mu).norm() == 0.0);
  CHECK(model.evaluate_hat(ctx, mu).norm() == 0.0);

  std::vector<CVec> hats(model.grid.n_omega, CVec::Zero(model.assembly.n_free()));
  CHECK(inverse_transform(hats, model.grid, 0.5).norm() == 0.0);
}

TEST_CASE("full-field evaluation rejects a mismatched partition") {
  const RunConfig cfg = desk("heat");
  const OfflineModel model = run_offline(cfg);
  const CoeffContext ctx = model.context();
  const DomainPartition other = build_partition(build_mesh(14, 14));
  CHECK_THROWS_AS(evaluate_full_field(model.interface_rom, model.sub_rom[0],
                                      model.sub_rom[1], other, ctx,
                                      {1.0, Vec::Constant(2, 1.5)},
                                      model.assembly.n_free()),
                  std::invalid_argument);
}

TEST_CASE("online cost: coefficient path is independent of mesh size") {
  RunConfig coarse = desk("heat");
  RunConfig fine = desk("heat");
  fine.nx = fine.ny = 16;
  // Tiny tolerances so the caps bind identically on both meshes.
  for (RunConfig* c : {&coarse, &fine})
    c->tol_x = c->tol_f = c->tol_interface = c->tol_subdomain = 1e-14;

  const OfflineModel m1 = run_offline(coarse);
  const OfflineModel m2 = run_offline(fine);
  REQUIRE(m1.interface_rom.n_terms() == m2.interface_rom.n_terms());
  REQUIRE(m1.sub_rom[0].n_terms() == m2.sub_rom[0].n_terms());
  REQUIRE(m1.sub_rom[1].n_terms() == m2.sub_rom[1].n_terms());
  REQUIRE(m1.x[0].n_terms() == m2.x[0].n_terms());
  REQUIRE(m1.yload[0].n_terms() == m2.yload[0].n_terms());

  const CoeffContext c1 = m1.context();
  const CoeffContext c2 = m2.context();
  Rng rng(11);
  const Vec xi = rng.uniform_in(m1.problem.box);
  std::uint64_t ops1 = 0, ops2 = 0;
  for (double omega : {0.0, 3.7, 11.0}) {
    const ParameterPoint mu{omega, xi};
    op_counters().reset();
    (void)m1.interface_rom.sep.zeta_table(c1, mu);
    (void)m1.sub_rom[0].sep.zeta_table(c1, mu);
    (void)m1.sub_rom[1].sep.zeta_table(c1, mu);
    CHECK(op_counters().vector_elems == 0);
    ops1 += op_counters().scalar_ops;
    op_counters().reset();
    (void)m2.interface_rom.sep.zeta_table(c2, mu);
    (void)m2.sub_rom[0].sep.zeta_table(c2, mu);
    (void)m2.sub_rom[1].sep.zeta_table(c2, mu);
    CHECK(op_counters().vector_elems == 0);
    ops2 += op_counters().scalar_ops;
  }
  CHECK(ops1 == ops2);
}
