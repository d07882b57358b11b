// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/pipeline.hpp"

#include <Eigen/SparseLU>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "core/instrument.hpp"
#include "core/reference.hpp"

namespace ftddvs {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void log_solution(std::ostream* log, const std::string& name,
                  const SeparatedSolution& sep) {
  if (!log) return;
  *log << "  " << name << ": N=" << sep.n_terms() << " residuals=[";
  for (size_t i = 0; i < sep.residual_history.size(); ++i) {
    if (i) *log << ", ";
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%.3e",
                  sep.residual_history[i] / sep.rhs_scale);
    *log << buf;
  }
  *log << "]";
  if (sep.cap_warning) *log << " (cap reached before tolerance)";
  *log << "\n";
}

}  // namespace

SampleSet draw_training_samples(const ProblemDefinition& problem, int count,
                                double omega_max, std::uint64_t seed) {
  SampleSet set;
  set.rng_seed = seed;
  Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  for (int i = 0; i < count; ++i) {
    ParameterPoint mu;
    mu.omega = rng.uniform(0.0, omega_max);
    mu.xi = rng.uniform_in(problem.box);
    set.points.push_back(std::move(mu));
  }
  return set;
}

OfflineModel run_offline(const RunConfig& cfg, std::ostream* log) {
  validate(cfg);
  OfflineModel m;
  m.config = cfg;
  m.rebuild_discretization();

  CoeffContext ctx;
  ctx.problem = &m.problem;

  const SampleSet xi_set = draw_training_samples(m.problem, cfg.train_samples,
                                                 cfg.omega_max, cfg.train_seed);

  if (log) *log << "[offline] interface-flux factors X_j\n";
  for (int j = 0; j < 2; ++j) {
    m.x[j] = approximate_x(m.blocks[j], xi_set, ctx, {cfg.tol_x, cfg.n_s});
    log_solution(log, "X" + std::to_string(j + 1), m.x[j].sep);
  }
  if (log) *log << "[offline] interior load factors Y_j\n";
  for (int j = 0; j < 2; ++j) {
    m.yload[j] =
        approximate_interior_load(m.blocks[j], xi_set, ctx, {cfg.tol_f, cfg.n_f});
    log_solution(log, "Y" + std::to_string(j + 1), m.yload[j]);
  }

  m.schur = assemble_affine_s(m.blocks[0], m.blocks[1], m.x[0], m.x[1]);
  m.load = assemble_affine_f(m.blocks[0], m.blocks[1], m.yload[0], m.yload[1]);
  if (log)
    *log << "[offline] affine terms: m_S=" << m.schur.m_s()
         << " m_F=" << m.load.m_f() << "\n";

  ctx.bind(Slot::X1, &m.x[0].sep);
  ctx.bind(Slot::X2, &m.x[1].sep);
  ctx.bind(Slot::F1, &m.yload[0]);
  ctx.bind(Slot::F2, &m.yload[1]);

  m.interface_rom = build_interface_rom(m.schur, m.load, xi_set, ctx,
                                        {cfg.tol_interface, cfg.n_gamma});
  log_solution(log, "interface", m.interface_rom.sep);

  ctx.bind(Slot::Interface, &m.interface_rom.sep);
  for (int j = 0; j < 2; ++j) {
    m.sub_rom[j] = build_subdomain_rom(m.blocks[j], m.interface_rom.sep, xi_set,
                                       ctx, {cfg.tol_subdomain, cfg.n_i});
    log_solution(log, "interior" + std::to_string(j + 1), m.sub_rom[j].sep);
  }
  return m;
}

ReconstructionPlan make_reconstruction_plan(const OfflineModel& model,
                                            const std::vector<double>& times) {
  ReconstructionPlan plan;
  plan.n_free = model.assembly.n_free();
  plan.n_times = static_cast<int>(times.size());
  const auto& grid = model.grid;
  plan.cos_table.resize(grid.n_omega, plan.n_times);
  plan.sin_table.resize(grid.n_omega, plan.n_times);
  for (int j = 0; j < grid.n_omega; ++j)
    for (int m = 0; m < plan.n_times; ++m) {
      const double ph = grid.nodes[j] * times[m];
      const double w = grid.weights[j] / std::numbers::pi;
      plan.cos_table(j, m) = w * std::cos(ph);
      plan.sin_table(j, m) = w * std::sin(ph);
    }

  auto add_part = [&](Slot slot, const SeparatedSolution& sep,
                      const std::vector<int>& dofs) {
    ReconstructionPlan::Part part;
    part.slot = slot;
    part.dofs = dofs;
    part.offset = dofs.empty() ? -1 : dofs.front();
    for (size_t r = 1; r < dofs.size(); ++r)
      if (dofs[r] != dofs.front() + static_cast<int>(r)) {
        part.offset = -1;
        break;
      }
    const int len = sep.n;
    const int nterms = sep.n_terms();
    part.modes_packed.resize(len, 2 * nterms);
    for (int k = 0; k < nterms; ++k) {
      part.modes_packed.col(k) = sep.modes_re[k].col(0);
      part.modes_packed.col(nterms + k) = -sep.modes_im[k].col(0);
    }
    plan.parts.push_back(std::move(part));
  };
  add_part(Slot::Interface, model.interface_rom.sep, model.partition.interface_dofs);
  add_part(Slot::Sub1, model.sub_rom[0].sep, model.partition.interior_dofs[0]);
  add_part(Slot::Sub2, model.sub_rom[1].sep, model.partition.interior_dofs[1]);
  return plan;
}

void reconstruct_trajectory(const ReconstructionPlan& plan,
                            const OfflineModel& model, const CoeffContext& ctx,
                            const Vec& xi, Mat& traj) {
  ZetaMemo memo;
  CoeffContext local = ctx;
  local.memo = &memo;
  const auto& grid = model.grid;

  // Frequency loop outer: the interface table computed at one mu is shared
  // by the subdomain parts through the memo.
  std::vector<Mat> zetas(plan.parts.size());
  for (size_t p = 0; p < plan.parts.size(); ++p)
    zetas[p].resize(plan.parts[p].modes_packed.cols(), grid.n_omega);
  for (int j = 0; j < grid.n_omega; ++j) {
    const ParameterPoint mu{grid.nodes[j], xi};
    memo.mu = mu;
    memo.filled.fill(false);
    for (size_t p = 0; p < plan.parts.size(); ++p) {
      const auto& part = plan.parts[p];
      auto& entry = memo.tables[int(part.slot)];
      if (!memo.filled[int(part.slot)]) {
        entry = ctx.slot(int(part.slot))->zeta_table(local, mu);
        memo.filled[int(part.slot)] = true;
      }
      const int nterms = static_cast<int>(entry.size());
      for (int k = 0; k < nterms; ++k) {
        zetas[p](k, j) = entry[k].first;
        zetas[p](nterms + k, j) = entry[k].second;
      }
    }
  }

  traj.resize(plan.n_free, plan.n_times);
  Mat coef;
  for (size_t p = 0; p < plan.parts.size(); ++p) {
    const auto& part = plan.parts[p];
    const int nterms = static_cast<int>(part.modes_packed.cols()) / 2;
    // u_part(t) = [M_re | -M_im] [Z_re C; Z_im S].
    coef.resize(2 * nterms, plan.n_times);
    coef.topRows(nterms).noalias() = zetas[p].topRows(nterms) * plan.cos_table;
    coef.bottomRows(nterms).noalias() =
        zetas[p].bottomRows(nterms) * plan.sin_table;
    count_vector(static_cast<std::uint64_t>(part.dofs.size()) * plan.n_times);
    if (part.offset >= 0) {
      traj.middleRows(part.offset, part.dofs.size()).noalias() =
          part.modes_packed * coef;
    } else {
      const Mat part_traj = part.modes_packed * coef;
      for (size_t r = 0; r < part.dofs.size(); ++r)
        traj.row(part.dofs[r]) = part_traj.row(static_cast<int>(r));
    }
  }
}

double trajectory_relative_error(const Mat& approx, const Mat& reference,
                                 const SpMat& mass, double tau) {
  if (approx.rows() != reference.rows() || approx.cols() != reference.cols())
    throw std::invalid_argument("trajectory_relative_error: shape mismatch");
  const int nt = static_cast<int>(approx.cols()) - 1;
  double num2 = 0.0, den2 = 0.0;
  for (int m = 0; m <= nt; ++m) {
    const double theta = (m == 0 || m == nt) ? 0.5 * tau : tau;
    const Vec diff = approx.col(m) - reference.col(m);
    num2 += theta * diff.dot(mass * diff);
    den2 += theta * reference.col(m).dot(mass * reference.col(m));
  }
  if (den2 <= 0.0)
    throw std::runtime_error("trajectory_relative_error: zero reference norm");
  return std::sqrt(num2 / den2);
}

OnlineReport run_online(const RunConfig& cfg, const OfflineModel& model,
                        std::ostream* log) {
  validate(cfg);
  if (cfg.problem != model.config.problem || cfg.nx != model.config.nx ||
      cfg.ny != model.config.ny || cfg.omega_max != model.config.omega_max ||
      cfg.n_omega != model.config.n_omega)
    throw std::invalid_argument(
        "run_online: configuration does not match the offline artifact "
        "(problem/mesh/frequency grid)");

  const CoeffContext ctx = model.context();
  const auto& grid = model.grid;
  const int n = model.assembly.n_free();
  const int nt = static_cast<int>(std::llround(model.problem.final_time / cfg.tau));
  const SpMat& mass = model.assembly.op.mass;

  OnlineReport report;
  report.config = cfg;
  report.time_grid.resize(nt);
  for (int m = 1; m <= nt; ++m) report.time_grid[m - 1] = m * cfg.tau;
  std::vector<double> time_err_acc(nt, 0.0);
  report.mean_field_rom = Vec::Zero(n);
  report.mean_field_ref = Vec::Zero(n);

  std::vector<double> times(nt + 1);
  for (int m = 0; m <= nt; ++m) times[m] = m * cfg.tau;
  const ReconstructionPlan plan = make_reconstruction_plan(model, times);

  Rng rng(cfg.eval_seed);
  Mat traj;
  for (int s = 0; s < cfg.eval_samples; ++s) {
    OnlineSample sample;
    sample.xi = rng.uniform_in(model.problem.box);

    const auto t0 = Clock::now();
    reconstruct_trajectory(plan, model, ctx, sample.xi, traj);
    sample.online_seconds = seconds_since(t0);

    {  // Cutoff-adequacy diagnostic (not part of the timed online path).
      ZetaMemo memo;
      CoeffContext diag_ctx = ctx;
      diag_ctx.memo = &memo;
      std::vector<CVec> hat_cols(grid.n_omega);
      for (int j = 0; j < grid.n_omega; ++j)
        hat_cols[j] = model.evaluate_hat(diag_ctx, {grid.nodes[j], sample.xi});
      report.tail_ratio_max =
          std::max(report.tail_ratio_max, cutoff_tail_ratio(hat_cols));
    }

    double num2 = 0.0, den2 = 0.0, num2_settled = 0.0, den2_settled = 0.0;
    const auto timing = fem_be_stream(
        model.assembly, model.problem, sample.xi, cfg.tau,
        [&](int m, double t, const Vec& u) {
          const double theta = (m == 0 || m == nt) ? 0.5 * cfg.tau : cfg.tau;
          const Vec diff = traj.col(m) - u;
          const double dn2 = diff.dot(mass * diff);
          const double rn2 = u.dot(mass * u);
          num2 += theta * dn2;
          den2 += theta * rn2;
          if (t >= 0.02) {
            num2_settled += theta * dn2;
            den2_settled += theta * rn2;
          }
          if (m >= 1 && rn2 > 0.0)
            time_err_acc[m - 1] += std::sqrt(dn2 / rn2);
          if (m == nt) {
            report.mean_field_rom += traj.col(m);
            report.mean_field_ref += u;
          }
        });
    sample.fembe_seconds = timing.solver_seconds;
    if (den2 <= 0.0)
      throw std::runtime_error("run_online: zero reference trajectory norm");
    sample.rel_error = std::sqrt(num2 / den2);
    sample.rel_error_settled =
        den2_settled > 0.0 ? std::sqrt(num2_settled / den2_settled) : 0.0;
    report.samples.push_back(std::move(sample));

    if (log && ((s + 1) % 25 == 0 || s + 1 == cfg.eval_samples))
      *log << "[online] " << (s + 1) << "/" << cfg.eval_samples
           << " samples done\n";
  }

  const double inv_m = 1.0 / cfg.eval_samples;
  for (const auto& s : report.samples) {
    report.eps_u += s.rel_error * inv_m;
    report.eps_u_settled += s.rel_error_settled * inv_m;
    report.mean_online_seconds += s.online_seconds * inv_m;
    report.mean_fembe_seconds += s.fembe_seconds * inv_m;
  }
  report.error_vs_time.resize(nt);
  for (int m = 0; m < nt; ++m) report.error_vs_time[m] = time_err_acc[m] * inv_m;
  // Export mean final-time fields on the vertex grid (boundary zeros),
  // independent of the internal dof numbering.
  report.mean_field_rom = free_to_vertex(report.mean_field_rom * inv_m, model.mesh);
  report.mean_field_ref = free_to_vertex(report.mean_field_ref * inv_m, model.mesh);

  if (log) {
    *log << "[online] eps_u=" << fmt(report.eps_u)
         << " online=" << fmt(report.mean_online_seconds)
         << "s/sample fem-be=" << fmt(report.mean_fembe_seconds)
         << "s/sample tail_ratio=" << fmt(report.tail_ratio_max) << "\n";
  }
  return report;
}

void write_online_outputs(const OnlineReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::string hash = config_hash(report.config);

  {
    std::ofstream out(dir + "/samples.csv");
    out << "sample";
    const int xi_dim =
        report.samples.empty() ? 0 : static_cast<int>(report.samples[0].xi.size());
    for (int d = 0; d < xi_dim; ++d) out << ",xi" << (d + 1);
    out << ",rel_error\n";
    for (size_t s = 0; s < report.samples.size(); ++s) {
      out << s;
      for (int d = 0; d < report.samples[s].xi.size(); ++d)
        out << "," << fmt(report.samples[s].xi[d]);
      out << "," << fmt(report.samples[s].rel_error) << "\n";
    }
  }
  {
    std::ofstream out(dir + "/error_vs_time.csv");
    out << "t,mean_rel_error\n";
    for (size_t m = 0; m < report.time_grid.size(); ++m)
      out << fmt(report.time_grid[m]) << "," << fmt(report.error_vs_time[m])
          << "\n";
  }
  {
    std::ofstream out(dir + "/field_t_final.csv");
    out << "vertex,rom,fembe\n";
    for (int i = 0; i < report.mean_field_rom.size(); ++i)
      out << i << "," << fmt(report.mean_field_rom[i]) << ","
          << fmt(report.mean_field_ref[i]) << "\n";
  }
  {
    std::ofstream out(dir + "/timing.csv");
    out << "sample,online_seconds,fembe_seconds\n";
    for (size_t s = 0; s < report.samples.size(); ++s)
      out << s << "," << fmt(report.samples[s].online_seconds) << ","
          << fmt(report.samples[s].fembe_seconds) << "\n";
  }
  {
    std::ofstream out(dir + "/summary.json");
    out << "{\n  \"config_hash\": \"" << hash << "\",\n"
        << "  \"problem\": \"" << report.config.problem << "\",\n"
        << "  \"nx\": " << report.config.nx << ",\n"
        << "  \"ny\": " << report.config.ny << ",\n"
        << "  \"tau\": " << fmt(report.config.tau) << ",\n"
        << "  \"samples\": " << report.samples.size() << ",\n"
        << "  \"eps_u\": " << fmt(report.eps_u) << ",\n"
        << "  \"eps_u_settled\": " << fmt(report.eps_u_settled) << ",\n"
        << "  \"tail_ratio_max\": " << fmt(report.tail_ratio_max) << ",\n"
        << "  \"timing\": {\n"
        << "    \"mean_online_seconds\": " << fmt(report.mean_online_seconds)
        << ",\n"
        << "    \"mean_fembe_seconds\": " << fmt(report.mean_fembe_seconds)
        << "\n  }\n}\n";
  }
}

void run_reference(const RunConfig& cfg, const std::string& dir,
                   std::ostream* log) {
  validate(cfg);
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const ProblemDefinition problem = make_problem(cfg.problem);
  const Mesh2D mesh = build_mesh(cfg.nx, cfg.ny);
  const Assembly asm_ = assemble(problem, mesh);

  Rng rng(cfg.eval_seed);
  const Vec xi = rng.uniform_in(problem.box);

  // Probe dofs nearest to three section points on the horizontal midline.
  const auto dof = free_dof_map(mesh);
  std::vector<int> probes;
  for (double px : {0.25, 0.5, 0.75}) {
    const int i = std::max(1, std::min(mesh.nx - 1,
                                       static_cast<int>(std::lround(px * mesh.nx))));
    const int jmid = std::max(1, mesh.ny / 2);
    probes.push_back(dof[mesh.vertex_id(i, jmid)]);
  }

  std::ofstream out(dir + "/reference_trajectory.csv");
  out << "t,probe_x025,probe_x050,probe_x075\n";
  fem_be_stream(asm_, problem, xi, cfg.tau, [&](int, double t, const Vec& u) {
    out << fmt(t);
    for (int p : probes) out << "," << fmt(u[p]);
    out << "\n";
  });
  if (log)
    *log << "[reference] wrote " << dir << "/reference_trajectory.csv (xi fixed"
         << " by eval seed)\n";
}

SweepResult run_sweep(const RunConfig& cfg, const std::string& quantity,
                      int n_min, int n_max, std::ostream* log) {
  validate(cfg);
  if (n_min < 1 || n_max < n_min)
    throw std::invalid_argument("run_sweep: invalid term range");

  SweepResult result;
  result.quantity = quantity;
  for (int nval = n_min; nval <= n_max; ++nval) result.n_values.push_back(nval);

  RunConfig train_cfg = cfg;
  // Force the swept stage to its maximum rank; truncation walks the curve.
  const double forced_tol = 1e-15;
  if (quantity == "n_s") {
    train_cfg.n_s = n_max;
    train_cfg.tol_x = forced_tol;
  } else if (quantity == "n_f") {
    train_cfg.n_f = n_max;
    train_cfg.tol_f = forced_tol;
  } else if (quantity == "n_gamma") {
    train_cfg.n_gamma = n_max;
    train_cfg.tol_interface = forced_tol;
  } else if (quantity == "n_i") {
    train_cfg.n_i = n_max;
    train_cfg.tol_subdomain = forced_tol;
  } else {
    throw std::invalid_argument("run_sweep: unknown quantity '" + quantity +
                                "' (n_s|n_f|n_gamma|n_i)");
  }

  OfflineModel model = run_offline(train_cfg, log);
  const CoeffContext ctx = model.context();

  // Validation set: uniform xi, uniform omega in [0, omega_max].
  Rng rng(cfg.eval_seed ^ 0xabcdef12345ull);
  std::vector<ParameterPoint> val;
  for (int s = 0; s < cfg.eval_samples; ++s)
    val.push_back({rng.uniform(0.0, cfg.omega_max),
                   rng.uniform_in(model.problem.box)});

  result.errors.assign(result.n_values.size(), 0.0);

  if (quantity == "n_s" || quantity == "n_f") {
    std::vector<AffineSchur> s_trunc;
    std::vector<AffineLoad> f_trunc;
    for (int nval : result.n_values) {
      if (quantity == "n_s")
        s_trunc.push_back(assemble_affine_s(
            model.blocks[0], model.blocks[1], model.x[0], model.x[1],
            std::min(nval, model.x[0].n_terms()),
            std::min(nval, model.x[1].n_terms())));
      else
        f_trunc.push_back(assemble_affine_f(
            model.blocks[0], model.blocks[1], model.yload[0], model.yload[1],
            std::min(nval, model.yload[0].n_terms()),
            std::min(nval, model.yload[1].n_terms())));
    }
    for (size_t vi = 0; vi < val.size(); ++vi) {
      const auto& mu = val[vi];
      const auto s1 = schur_direct(model.blocks[0], ctx, mu);
      const auto s2 = schur_direct(model.blocks[1], ctx, mu);
      const int ng = model.schur.n_g;
      CMat s_ref = CMat::Zero(ng, ng);
      CVec f_ref = CVec::Zero(ng);
      for (int bsi = 0; bsi < 2; ++bsi) {
        const auto& map = model.blocks[bsi].local_of_global;
        const auto& pair = bsi == 0 ? s1 : s2;
        for (int a = 0; a < ng; ++a) {
          f_ref[a] += pair.F[map[a]];
          for (int b = 0; b < ng; ++b) s_ref(a, b) += pair.S(map[a], map[b]);
        }
      }
      for (size_t k = 0; k < result.n_values.size(); ++k) {
        if (quantity == "n_s") {
          const CMat s_aff = s_trunc[k].evaluate(ctx, mu);
          result.errors[k] += (s_aff - s_ref).operatorNorm() /
                              std::max(s_ref.operatorNorm(), 1e-300) / val.size();
        } else {
          const CVec f_aff = f_trunc[k].evaluate(ctx, mu);
          result.errors[k] +=
              (f_aff - f_ref).norm() / std::max(f_ref.norm(), 1e-300) / val.size();
        }
      }
      if (log && ((vi + 1) % 50 == 0 || vi + 1 == val.size()))
        *log << "[sweep " << quantity << "] " << (vi + 1) << "/" << val.size()
             << " validation samples\n";
    }
  } else if (quantity == "n_gamma") {
    for (const auto& mu : val) {
      const CMat S = model.schur.evaluate(ctx, mu);
      const CVec F = model.load.evaluate(ctx, mu);
      const CVec ref = Eigen::PartialPivLU<CMat>(S).solve(F);
      for (size_t k = 0; k < result.n_values.size(); ++k) {
        const int nval = std::min(result.n_values[k],
                                  model.interface_rom.sep.n_terms());
        const CVec approx = model.interface_rom.sep.evaluate_vector(ctx, mu, nval);
        result.errors[k] +=
            (approx - ref).norm() / std::max(ref.norm(), 1e-300) / val.size();
      }
    }
  } else {  // n_i
    for (const auto& mu : val) {
      const CVec mono = direct_frequency_solve(model.assembly, ctx, mu);
      for (size_t k = 0; k < result.n_values.size(); ++k) {
        double acc = 0.0;
        for (int j = 0; j < 2; ++j) {
          const int nval =
              std::min(result.n_values[k], model.sub_rom[j].sep.n_terms());
          const CVec approx =
              model.sub_rom[j].sep.evaluate_vector(ctx, mu, nval);
          CVec ref(model.blocks[j].n_i());
          for (int i = 0; i < model.blocks[j].n_i(); ++i)
            ref[i] = mono[model.blocks[j].interior[i]];
          acc += (approx - ref).norm() / std::max(ref.norm(), 1e-300);
        }
        result.errors[k] += 0.5 * acc / val.size();
      }
    }
  }
  return result;
}

void write_sweep_outputs(const SweepResult& result, const RunConfig& cfg,
                         const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream out(dir + "/decay_" + result.quantity + ".csv");
  out << "n,mean_rel_error\n";
  for (size_t k = 0; k < result.n_values.size(); ++k)
    out << result.n_values[k] << "," << fmt(result.errors[k]) << "\n";
}

}  // namespace ftddvs
