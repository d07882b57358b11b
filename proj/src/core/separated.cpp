// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/separated.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "core/instrument.hpp"

namespace ftddvs {

int OpMat::rows() const {
  return std::visit([](const auto& v) { return static_cast<int>(v.rows()); }, m);
}
int OpMat::cols() const {
  return std::visit([](const auto& v) { return static_cast<int>(v.cols()); }, m);
}
Mat OpMat::apply(const Mat& x) const {
  count_vector(static_cast<std::uint64_t>(x.size()));
  return std::visit([&](const auto& v) -> Mat { return v * x; }, m);
}
void OpMat::add_to(Mat& acc, double scale) const {
  if (is_dense())
    acc += scale * std::get<Mat>(m);
  else
    acc += scale * Mat(std::get<SpMat>(m));
}

bool AffineComplexSystem::is_dense() const {
  for (const auto& t : real_ops)
    if (t.mat.is_dense()) return true;
  for (const auto& t : imag_ops)
    if (t.mat.is_dense()) return true;
  return false;
}

std::pair<Mat, Mat> AffineComplexSystem::rhs_at(const CoeffContext& ctx,
                                                const ParameterPoint& mu) const {
  Mat re = Mat::Zero(n, r), im = Mat::Zero(n, r);
  for (const auto& t : rhs) {
    if (t.has_re) re += ctx.eval(t.coeff_re, mu) * t.F_re;
    if (t.has_im) im += ctx.eval(t.coeff_im, mu) * t.F_im;
    count_vector(static_cast<std::uint64_t>(n) * r);
  }
  return {re, im};
}

std::pair<Mat, Mat> AffineComplexSystem::apply(const CoeffContext& ctx,
                                               const ParameterPoint& mu,
                                               const Mat& Xre, const Mat& Xim) const {
  Mat yre = Mat::Zero(n, r), yim = Mat::Zero(n, r);
  for (const auto& t : real_ops) {
    const double a = ctx.eval(t.coeff, mu);
    if (a == 0.0) continue;
    yre += a * t.mat.apply(Xre);
    yim += a * t.mat.apply(Xim);
  }
  for (const auto& t : imag_ops) {
    const double g = ctx.eval(t.coeff, mu);
    if (g == 0.0) continue;
    yre -= g * t.mat.apply(Xim);
    yim += g * t.mat.apply(Xre);
  }
  return {yre, yim};
}

CMat AffineComplexSystem::dense_matrix(const CoeffContext& ctx,
                                       const ParameterPoint& mu) const {
  Mat re = Mat::Zero(n, n), im = Mat::Zero(n, n);
  for (const auto& t : real_ops) t.mat.add_to(re, ctx.eval(t.coeff, mu));
  for (const auto& t : imag_ops) t.mat.add_to(im, ctx.eval(t.coeff, mu));
  CMat out(n, n);
  out.real() = re;
  out.imag() = im;
  return out;
}

SpCMat AffineComplexSystem::sparse_matrix(const CoeffContext& ctx,
                                          const ParameterPoint& mu) const {
  SpCMat sys(n, n);
  for (const auto& t : real_ops)
    sys += ctx.eval(t.coeff, mu) * std::get<SpMat>(t.mat.m).cast<Complex>();
  for (const auto& t : imag_ops)
    sys += Complex(0.0, ctx.eval(t.coeff, mu)) * std::get<SpMat>(t.mat.m).cast<Complex>();
  sys.makeCompressed();
  return sys;
}

double complex_norm(const Mat& re, const Mat& im) {
  return std::sqrt(re.squaredNorm() + im.squaredNorm());
}

std::pair<Mat, Mat> solve_snapshot(const AffineComplexSystem& system,
                                   const CoeffContext& ctx, const ParameterPoint& mu,
                                   const Mat& Bre, const Mat& Bim) {
  const int n = system.n, r = system.r;
  CMat B(n, r);
  B.real() = Bre;
  B.imag() = Bim;
  CMat X(n, r);

  if (system.is_dense()) {
    const CMat A = system.dense_matrix(ctx, mu);
    Eigen::PartialPivLU<CMat> lu(A);
    X = lu.solve(B);
  } else {
    const SpCMat A = system.sparse_matrix(ctx, mu);
    Eigen::SparseLU<SpCMat> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) {
      std::ostringstream os;
      os << "solve_snapshot: factorization failed at mu=(omega=" << mu.omega
         << "); the system appears singular";
      throw std::runtime_error(os.str());
    }
    X = lu.solve(B);
  }
  count_vector(static_cast<std::uint64_t>(n) * r);

  const auto [rre, rim] = system.apply(ctx, mu, Mat(X.real()), Mat(X.imag()));
  const double bnorm = complex_norm(Bre, Bim);
  if (bnorm > 0.0) {
    const double res = complex_norm(rre - Bre, rim - Bim) / bnorm;
    if (!(res <= 1e-8)) {
      std::ostringstream os;
      os << "solve_snapshot: relative residual " << res << " at mu=(omega="
         << mu.omega << "); condition estimate ~" << 1.0 / std::max(res, 1e-300)
         << " suggests a (near-)singular system";
      throw std::runtime_error(os.str());
    }
  }
  return {Mat(X.real()), Mat(X.imag())};
}

namespace {

constexpr double kDenominatorGuard = 1e-14;

// One zeta pair from the 2x2 system
//   a zre - b zim = rho1,   c zre + d zim = rho2
// (the printed closed forms with determinant a d + b c), with the
// degenerate fallbacks: structurally absent parts are pinned to zero and a
// vanishing denominator yields zero with the flag set.
std::pair<double, double> solve_zeta(double a, double b, double c, double d,
                                     double rho1, double rho2, bool has_re,
                                     bool has_im, bool* flag) {
  count_scalar(12);
  if (!has_re && !has_im) return {0.0, 0.0};
  if (!has_im) {
    if (std::abs(a) <= kDenominatorGuard * std::abs(rho1)) {
      if (rho1 != 0.0 && flag) *flag = true;
      return {0.0, 0.0};
    }
    return {a == 0.0 ? 0.0 : rho1 / a, 0.0};
  }
  if (!has_re) {
    if (std::abs(d) <= kDenominatorGuard * std::abs(rho2)) {
      if (rho2 != 0.0 && flag) *flag = true;
      return {0.0, 0.0};
    }
    return {0.0, d == 0.0 ? 0.0 : rho2 / d};
  }
  const double det = a * d + b * c;
  const double num_re = d * rho1 + b * rho2;
  const double num_im = a * rho2 - c * rho1;
  const double scale = std::max(std::abs(num_re), std::abs(num_im));
  if (std::abs(det) <= kDenominatorGuard * scale) {
    if (scale != 0.0 && flag) *flag = true;
    return {0.0, 0.0};
  }
  if (det == 0.0) return {0.0, 0.0};
  return {num_re / det, num_im / det};
}

}  // namespace

std::vector<std::pair<double, double>> SeparatedSolution::zeta_table(
    const CoeffContext& ctx, const ParameterPoint& mu, int upto) const {
  const int N = upto < 0 ? n_terms() : std::min(upto, n_terms());
  const int ma = static_cast<int>(alpha_descs.size());
  const int mg = static_cast<int>(gamma_descs.size());
  const int mb = static_cast<int>(rhs_descs.size());

  std::vector<double> av(ma), gv(mg), bre(mb, 0.0), bim(mb, 0.0);
  for (int j = 0; j < ma; ++j) av[j] = ctx.eval(alpha_descs[j], mu);
  for (int g = 0; g < mg; ++g) gv[g] = ctx.eval(gamma_descs[g], mu);
  for (int q = 0; q < mb; ++q) {
    if (rhs_descs[q].has_re) bre[q] = ctx.eval(rhs_descs[q].coeff_re, mu);
    if (rhs_descs[q].has_im) bim[q] = ctx.eval(rhs_descs[q].coeff_im, mu);
  }

  std::vector<std::pair<double, double>> zetas(N);
  for (int k = 0; k < N; ++k) {
    double rho1 = 0.0, rho2 = 0.0;
    for (int q = 0; q < mb; ++q) {
      rho1 += bre[q] * reduced.f_re(k, q);
      rho2 += bim[q] * reduced.f_im(k, q);
    }
    count_scalar(4 * static_cast<std::uint64_t>(mb));
    for (int l = 0; l < k; ++l) {
      double mri = 0.0, mir = 0.0, arr = 0.0, aii = 0.0;
      for (int g = 0; g < mg; ++g) {
        mri += gv[g] * reduced.m_ri[g](k, l);
        mir += gv[g] * reduced.m_ir[g](k, l);
      }
      for (int j = 0; j < ma; ++j) {
        arr += av[j] * reduced.a_rr[j](k, l);
        aii += av[j] * reduced.a_ii[j](k, l);
      }
      rho1 += zetas[l].second * mri - zetas[l].first * arr;
      rho2 -= zetas[l].first * mir + zetas[l].second * aii;
      count_scalar(4 * static_cast<std::uint64_t>(mg + ma) + 8);
    }
    double a = 0.0, d = 0.0, b = 0.0, c = 0.0;
    for (int j = 0; j < ma; ++j) {
      a += av[j] * reduced.a_rr[j](k, k);
      d += av[j] * reduced.a_ii[j](k, k);
    }
    for (int g = 0; g < mg; ++g) {
      b += gv[g] * reduced.m_ri[g](k, k);
      c += gv[g] * reduced.m_ir[g](k, k);
    }
    count_scalar(4 * static_cast<std::uint64_t>(ma + mg));
    zetas[k] = solve_zeta(a, b, c, d, rho1, rho2, has_re[k], has_im[k],
                          &degenerate_flag);
  }
  return zetas;
}

std::pair<Mat, Mat> SeparatedSolution::evaluate(const CoeffContext& ctx,
                                                const ParameterPoint& mu,
                                                int upto) const {
  const auto zetas = zeta_table(ctx, mu, upto);
  Mat re = Mat::Zero(n, r), im = Mat::Zero(n, r);
  for (size_t k = 0; k < zetas.size(); ++k) {
    if (zetas[k].first != 0.0) re += zetas[k].first * modes_re[k];
    if (zetas[k].second != 0.0) im += zetas[k].second * modes_im[k];
    count_vector(2 * static_cast<std::uint64_t>(n) * r);
  }
  return {re, im};
}

CVec SeparatedSolution::evaluate_vector(const CoeffContext& ctx,
                                        const ParameterPoint& mu, int upto) const {
  if (r != 1)
    throw std::logic_error("evaluate_vector: solution is matrix-valued");
  const auto [re, im] = evaluate(ctx, mu, upto);
  CVec out(n);
  out.real() = re.col(0);
  out.imag() = im.col(0);
  return out;
}

namespace {

double frob_dot(const Mat& a, const Mat& b) { return a.cwiseProduct(b).sum(); }

// Applied-mode cache used while training: per term, A_j c_l for all modes.
struct AppliedCache {
  std::vector<std::vector<Mat>> re;  // [term][mode]
  std::vector<std::vector<Mat>> im;
};

void append_reduced(const AffineComplexSystem& system, SeparatedSolution& sol,
                    AppliedCache& aops, AppliedCache& mops, const Mat& cre,
                    const Mat& cim) {
  const int k = sol.n_terms();
  const int ma = static_cast<int>(system.real_ops.size());
  const int mg = static_cast<int>(system.imag_ops.size());
  const int mb = static_cast<int>(system.rhs.size());

  // A part whose norm is at roundoff level relative to its partner is
  // structurally absent (a real snapshot computed in complex arithmetic
  // carries ~1e-16 imaginary noise); its zeta is pinned to zero.
  Mat cre_kept = cre, cim_kept = cim;
  const double floor = 1e-12 * std::max(cre.norm(), cim.norm());
  const bool keep_re = cre.norm() > floor;
  const bool keep_im = cim.norm() > floor;
  if (!keep_re) cre_kept.setZero();
  if (!keep_im) cim_kept.setZero();
  sol.modes_re.push_back(cre_kept);
  sol.modes_im.push_back(cim_kept);
  sol.has_re.push_back(keep_re);
  sol.has_im.push_back(keep_im);

  auto grow = [&](Mat& t) {
    Mat g = Mat::Zero(k + 1, k + 1);
    if (k > 0) g.topLeftCorner(k, k) = t;
    t = g;
  };
  for (int j = 0; j < ma; ++j) {
    grow(sol.reduced.a_rr[j]);
    grow(sol.reduced.a_ii[j]);
  }
  for (int g = 0; g < mg; ++g) {
    grow(sol.reduced.m_ri[g]);
    grow(sol.reduced.m_ir[g]);
  }
  {
    Mat fre = Mat::Zero(k + 1, mb), fim = Mat::Zero(k + 1, mb);
    if (k > 0) {
      fre.topRows(k) = sol.reduced.f_re;
      fim.topRows(k) = sol.reduced.f_im;
    }
    sol.reduced.f_re = fre;
    sol.reduced.f_im = fim;
  }

  const Mat& re_mode = sol.modes_re.back();
  const Mat& im_mode = sol.modes_im.back();
  for (int j = 0; j < ma; ++j) {
    aops.re[j].push_back(system.real_ops[j].mat.apply(re_mode));
    aops.im[j].push_back(system.real_ops[j].mat.apply(im_mode));
    for (int l = 0; l <= k; ++l) {
      sol.reduced.a_rr[j](k, l) = frob_dot(re_mode, aops.re[j][l]);
      sol.reduced.a_ii[j](k, l) = frob_dot(im_mode, aops.im[j][l]);
      if (l < k) {
        sol.reduced.a_rr[j](l, k) = frob_dot(sol.modes_re[l], aops.re[j][k]);
        sol.reduced.a_ii[j](l, k) = frob_dot(sol.modes_im[l], aops.im[j][k]);
      }
    }
  }
  for (int g = 0; g < mg; ++g) {
    mops.re[g].push_back(system.imag_ops[g].mat.apply(re_mode));
    mops.im[g].push_back(system.imag_ops[g].mat.apply(im_mode));
    for (int l = 0; l <= k; ++l) {
      sol.reduced.m_ri[g](k, l) = frob_dot(re_mode, mops.im[g][l]);
      sol.reduced.m_ir[g](k, l) = frob_dot(im_mode, mops.re[g][l]);
      if (l < k) {
        sol.reduced.m_ri[g](l, k) = frob_dot(sol.modes_re[l], mops.im[g][k]);
        sol.reduced.m_ir[g](l, k) = frob_dot(sol.modes_im[l], mops.re[g][k]);
      }
    }
  }
  for (int q = 0; q < mb; ++q) {
    if (system.rhs[q].has_re)
      sol.reduced.f_re(k, q) = frob_dot(re_mode, system.rhs[q].F_re);
    if (system.rhs[q].has_im)
      sol.reduced.f_im(k, q) = frob_dot(im_mode, system.rhs[q].F_im);
  }
}

}  // namespace

SeparatedSolution vs_greedy(const AffineComplexSystem& system,
                            const SampleSet& samples, const CoeffContext& ctx,
                            const GreedyOptions& opts) {
  if (samples.points.empty())
    throw std::invalid_argument("vs_greedy: the sample set is empty");
  if (!(opts.epsilon > 0.0))
    throw std::invalid_argument("vs_greedy: epsilon must be positive");

  SeparatedSolution sol;
  sol.n = system.n;
  sol.r = system.r;
  sol.rng_seed = samples.rng_seed;
  const int ma = static_cast<int>(system.real_ops.size());
  const int mg = static_cast<int>(system.imag_ops.size());
  sol.reduced.a_rr.assign(ma, Mat());
  sol.reduced.a_ii.assign(ma, Mat());
  sol.reduced.m_ri.assign(mg, Mat());
  sol.reduced.m_ir.assign(mg, Mat());
  for (const auto& t : system.real_ops) sol.alpha_descs.push_back(t.coeff);
  for (const auto& t : system.imag_ops) sol.gamma_descs.push_back(t.coeff);
  for (const auto& t : system.rhs) {
    RhsTerm d;
    d.has_re = t.has_re;
    d.has_im = t.has_im;
    d.coeff_re = t.coeff_re;
    d.coeff_im = t.coeff_im;
    sol.rhs_descs.push_back(d);
  }

  AppliedCache aops, mops;
  aops.re.resize(ma);
  aops.im.resize(ma);
  mops.re.resize(mg);
  mops.im.resize(mg);

  std::vector<int> remaining(samples.points.size());
  for (size_t i = 0; i < remaining.size(); ++i) remaining[i] = static_cast<int>(i);
  Rng rng(samples.rng_seed);
  int pick = static_cast<int>(rng.integer(remaining.size()));

  const auto [b1re, b1im] = system.rhs_at(ctx, samples.points[pick]);
  sol.rhs_scale = std::max(complex_norm(b1re, b1im), 1e-300);

  while (true) {
    const ParameterPoint mu_k = samples.points[remaining[pick]];
    sol.chosen_samples.push_back(mu_k);
    remaining.erase(remaining.begin() + pick);

    // Residual right-hand side r_k(mu_k) with the current history.
    Mat bre, bim;
    {
      auto [fre, fim] = system.rhs_at(ctx, mu_k);
      if (sol.n_terms() > 0) {
        const auto [ure, uim] = sol.evaluate(ctx, mu_k);
        const auto [are, aim] = system.apply(ctx, mu_k, ure, uim);
        fre -= are;
        fim -= aim;
      }
      bre = std::move(fre);
      bim = std::move(fim);
    }
    const auto [cre, cim] = solve_snapshot(system, ctx, mu_k, bre, bim);
    append_reduced(system, sol, aops, mops, cre, cim);

    double max_res = 0.0;
    int argmax = -1;
    for (size_t i = 0; i < remaining.size(); ++i) {
      const ParameterPoint& mu = samples.points[remaining[i]];
      const auto [fre, fim] = system.rhs_at(ctx, mu);
      const auto [ure, uim] = sol.evaluate(ctx, mu);
      const auto [are, aim] = system.apply(ctx, mu, ure, uim);
      const double res = complex_norm(fre - are, fim - aim);
      if (res > max_res) {  // strict: ties keep the lowest sample index
        max_res = res;
        argmax = static_cast<int>(i);
      }
    }
    sol.residual_history.push_back(max_res);

    if (remaining.empty()) {
      sol.exhausted = true;
      break;
    }
    if (max_res <= opts.epsilon * sol.rhs_scale) break;
    if (sol.n_terms() >= opts.n_max) {
      sol.cap_warning = true;
      break;
    }
    pick = argmax;
  }
  return sol;
}

std::vector<std::pair<double, double>> zeta_table_full(
    const AffineComplexSystem& system, const SeparatedSolution& sol,
    const CoeffContext& ctx, const ParameterPoint& mu, int upto) {
  const int N = upto < 0 ? sol.n_terms() : std::min(upto, sol.n_terms());
  std::vector<std::pair<double, double>> zetas(N);
  Mat ure = Mat::Zero(system.n, system.r), uim = ure;
  for (int k = 0; k < N; ++k) {
    auto [rre, rim] = system.rhs_at(ctx, mu);
    if (k > 0) {
      const auto [are, aim] = system.apply(ctx, mu, ure, uim);
      rre -= are;
      rim -= aim;
    }
    const Mat& cre = sol.modes_re[k];
    const Mat& cim = sol.modes_im[k];
    double a = 0.0, d = 0.0, b = 0.0, c = 0.0;
    for (const auto& t : system.real_ops) {
      const double av = ctx.eval(t.coeff, mu);
      a += av * cre.cwiseProduct(t.mat.apply(cre)).sum();
      d += av * cim.cwiseProduct(t.mat.apply(cim)).sum();
    }
    for (const auto& t : system.imag_ops) {
      const double gv = ctx.eval(t.coeff, mu);
      b += gv * cre.cwiseProduct(t.mat.apply(cim)).sum();
      c += gv * cim.cwiseProduct(t.mat.apply(cre)).sum();
    }
    const double rho1 = cre.cwiseProduct(rre).sum();
    const double rho2 = cim.cwiseProduct(rim).sum();
    bool flag = false;
    zetas[k] = solve_zeta(a, b, c, d, rho1, rho2, sol.has_re[k], sol.has_im[k],
                          &flag);
    if (zetas[k].first != 0.0) ure += zetas[k].first * cre;
    if (zetas[k].second != 0.0) uim += zetas[k].second * cim;
  }
  return zetas;
}

}  // namespace ftddvs
