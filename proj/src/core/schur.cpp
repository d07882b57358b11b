// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/schur.hpp"

#include <Eigen/SparseLU>
#include <stdexcept>

namespace ftddvs {

namespace {

SpCMat complex_block(const std::vector<SpMat>& terms,
                     const std::vector<int>& term_index, const SpMat& mass,
                     const CoeffContext& ctx, const ParameterPoint& mu) {
  SpCMat out = Complex(0.0, gamma_of(mu)) * mass.cast<Complex>();
  for (size_t n = 0; n < terms.size(); ++n) {
    const double a = ctx.problem->op_terms[term_index[n]].alpha(mu);
    out += Complex(a, 0.0) * terms[n].cast<Complex>();
  }
  out.makeCompressed();
  return out;
}

CVec complex_load(const std::vector<Vec>& terms, const std::vector<int>& src_index,
                  const CoeffContext& ctx, const ParameterPoint& mu, int size) {
  CVec out = CVec::Zero(size);
  for (size_t q = 0; q < terms.size(); ++q) {
    const double re = ctx.eval(CoeffDesc::src_re(src_index[q]), mu);
    const double im = ctx.eval(CoeffDesc::src_im(src_index[q]), mu);
    out += Complex(re, im) * terms[q].cast<Complex>();
  }
  return out;
}

}  // namespace

SchurPair schur_direct(const BlockSet& bs, const CoeffContext& ctx,
                       const ParameterPoint& mu) {
  const SpCMat a_ii = complex_block(bs.A_II, bs.op_term_index, bs.M_II, ctx, mu);
  Eigen::SparseLU<SpCMat> lu;
  lu.compute(a_ii);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("schur_direct: A_II(mu) is singular");

  CMat a_ig = CMat::Zero(bs.n_i(), bs.n_g());
  CMat a_gi = CMat::Zero(bs.n_g(), bs.n_i());
  CMat a_gg = CMat::Zero(bs.n_g(), bs.n_g());
  const Complex ig(0.0, gamma_of(mu));
  a_ig += ig * CMat(bs.M_IG.cast<Complex>());
  a_gi += ig * CMat(bs.M_GI.cast<Complex>());
  a_gg += ig * CMat(bs.M_GG.cast<Complex>());
  for (size_t n = 0; n < bs.A_II.size(); ++n) {
    const Complex a(ctx.problem->op_terms[bs.op_term_index[n]].alpha(mu), 0.0);
    a_ig += a * CMat(bs.A_IG[n].cast<Complex>());
    a_gi += a * CMat(bs.A_GI[n].cast<Complex>());
    a_gg += a * CMat(bs.A_GG[n].cast<Complex>());
  }

  const CVec f_i = complex_load(bs.f_I, bs.rhs_source_index, ctx, mu, bs.n_i());
  const CVec f_g = complex_load(bs.f_G, bs.rhs_source_index, ctx, mu, bs.n_g());

  SchurPair out;
  const CMat x = lu.solve(a_ig);
  out.S = a_gg - a_gi * x;
  out.F = f_g - a_gi * CVec(lu.solve(f_i));
  return out;
}

CVec dd_direct_solve(const BlockSet& b1, const BlockSet& b2,
                     const CoeffContext& ctx, const ParameterPoint& mu,
                     int n_free) {
  const int ng = b1.n_g();
  CMat S = CMat::Zero(ng, ng);
  CVec F = CVec::Zero(ng);
  for (const BlockSet* bs : {&b1, &b2}) {
    const auto pair = schur_direct(*bs, ctx, mu);
    const auto& map = bs->local_of_global;
    for (int a = 0; a < ng; ++a) {
      F[a] += pair.F[map[a]];
      for (int b = 0; b < ng; ++b) S(a, b) += pair.S(map[a], map[b]);
    }
  }
  const CVec u_g = Eigen::PartialPivLU<CMat>(S).solve(F);

  CVec u = CVec::Zero(n_free);
  for (int a = 0; a < ng; ++a) u[b1.interface[a]] = u_g[a];
  for (const BlockSet* bs : {&b1, &b2}) {
    const SpCMat a_ii = complex_block(bs->A_II, bs->op_term_index, bs->M_II, ctx, mu);
    Eigen::SparseLU<SpCMat> lu;
    lu.compute(a_ii);
    if (lu.info() != Eigen::Success)
      throw std::runtime_error("dd_direct_solve: A_II(mu) is singular");
    CVec u_g_local(bs->n_g());
    for (int a = 0; a < ng; ++a) u_g_local[bs->local_of_global[a]] = u_g[a];
    CVec rhs = complex_load(bs->f_I, bs->rhs_source_index, ctx, mu, bs->n_i());
    const Complex ig(0.0, gamma_of(mu));
    rhs -= ig * (bs->M_IG.cast<Complex>() * u_g_local);
    for (size_t n = 0; n < bs->A_II.size(); ++n) {
      const Complex a(ctx.problem->op_terms[bs->op_term_index[n]].alpha(mu), 0.0);
      rhs -= a * (bs->A_IG[n].cast<Complex>() * u_g_local);
    }
    const CVec u_i = lu.solve(rhs);
    for (int k = 0; k < bs->n_i(); ++k) u[bs->interior[k]] = u_i[k];
  }
  return u;
}

AffineComplexSystem make_x_system(const BlockSet& bs) {
  AffineComplexSystem sys;
  sys.n = bs.n_i();
  sys.r = bs.n_g();
  for (size_t n = 0; n < bs.A_II.size(); ++n)
    sys.real_ops.push_back({CoeffDesc::alpha(bs.op_term_index[n]), OpMat(bs.A_II[n])});
  sys.imag_ops.push_back({CoeffDesc::gamma(), OpMat(bs.M_II)});
  for (size_t n = 0; n < bs.A_IG.size(); ++n) {
    RhsTerm t;
    t.has_re = true;
    t.coeff_re = CoeffDesc::alpha(bs.op_term_index[n]);
    t.F_re = Mat(bs.A_IG[n]);
    sys.rhs.push_back(std::move(t));
  }
  {
    RhsTerm t;
    t.has_im = true;
    t.coeff_im = CoeffDesc::gamma();
    t.F_im = Mat(bs.M_IG);
    sys.rhs.push_back(std::move(t));
  }
  return sys;
}

AffineComplexSystem make_f_system(const BlockSet& bs) {
  AffineComplexSystem sys;
  sys.n = bs.n_i();
  sys.r = 1;
  for (size_t n = 0; n < bs.A_II.size(); ++n)
    sys.real_ops.push_back({CoeffDesc::alpha(bs.op_term_index[n]), OpMat(bs.A_II[n])});
  sys.imag_ops.push_back({CoeffDesc::gamma(), OpMat(bs.M_II)});
  for (size_t q = 0; q < bs.f_I.size(); ++q) {
    RhsTerm t;
    t.has_re = t.has_im = true;
    t.coeff_re = CoeffDesc::src_re(bs.rhs_source_index[q]);
    t.coeff_im = CoeffDesc::src_im(bs.rhs_source_index[q]);
    t.F_re = bs.f_I[q];
    t.F_im = bs.f_I[q];
    sys.rhs.push_back(std::move(t));
  }
  return sys;
}

LowRankX approximate_x(const BlockSet& bs, const SampleSet& samples,
                       const CoeffContext& ctx, const GreedyOptions& opts) {
  LowRankX out;
  out.subdomain = bs.j;
  out.sep = vs_greedy(make_x_system(bs), samples, ctx, opts);
  return out;
}

SeparatedSolution approximate_interior_load(const BlockSet& bs,
                                            const SampleSet& samples,
                                            const CoeffContext& ctx,
                                            const GreedyOptions& opts) {
  return vs_greedy(make_f_system(bs), samples, ctx, opts);
}

CMat AffineSchur::evaluate(const CoeffContext& ctx, const ParameterPoint& mu) const {
  CMat out = CMat::Zero(n_g, n_g);
  for (const auto& t : real_terms) {
    const double v = ctx.eval(t.coeff, mu);
    if (v != 0.0) out.real() += v * t.mat;
  }
  for (const auto& t : imag_terms) {
    if (t.mat.size() == 0) continue;  // zero padding
    const double v = ctx.eval(t.coeff, mu);
    if (v != 0.0) out.imag() += v * t.mat;
  }
  return out;
}

CVec AffineLoad::evaluate(const CoeffContext& ctx, const ParameterPoint& mu) const {
  CVec out = CVec::Zero(n_g);
  for (const auto& t : real_terms) {
    const double v = ctx.eval(t.coeff, mu);
    if (v != 0.0) out.real() += v * t.vec;
  }
  for (const auto& t : imag_terms) {
    if (t.vec.size() == 0) continue;
    const double v = ctx.eval(t.coeff, mu);
    if (v != 0.0) out.imag() += v * t.vec;
  }
  return out;
}

namespace {

Mat globalize(const Mat& local, const std::vector<int>& map) {
  const int ng = static_cast<int>(map.size());
  Mat out(ng, ng);
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b) out(a, b) = local(map[a], map[b]);
  return out;
}

Vec globalize_vec(const Vec& local, const std::vector<int>& map) {
  const int ng = static_cast<int>(map.size());
  Vec out(ng);
  for (int a = 0; a < ng; ++a) out[a] = local[map[a]];
  return out;
}

}  // namespace

AffineSchur assemble_affine_s(const BlockSet& b1, const BlockSet& b2,
                              const LowRankX& x1, const LowRankX& x2,
                              int upto1, int upto2) {
  AffineSchur S;
  S.n_g = b1.n_g();
  const BlockSet* blocks[2] = {&b1, &b2};
  const LowRankX* lx[2] = {&x1, &x2};
  const Slot slots[2] = {Slot::X1, Slot::X2};
  const int upto[2] = {upto1 < 0 ? x1.n_terms() : std::min(upto1, x1.n_terms()),
                       upto2 < 0 ? x2.n_terms() : std::min(upto2, x2.n_terms())};

  // Base interface blocks A_GG^{jn} and i gamma M_GG^j.
  for (int j = 0; j < 2; ++j) {
    const auto& bs = *blocks[j];
    for (size_t n = 0; n < bs.A_GG.size(); ++n)
      S.real_terms.push_back({CoeffDesc::alpha(bs.op_term_index[n]),
                              globalize(Mat(bs.A_GG[n]), bs.local_of_global)});
    S.imag_terms.push_back(
        {CoeffDesc::gamma(), globalize(Mat(bs.M_GG), bs.local_of_global)});
  }

  // Product terms of -A_GI(mu) X^j(mu). The real/imaginary split of the
  // product fixes the signs:
  //   Re: -alpha phi^Re A_GI X^Re + gamma phi^Im M_GI X^Im
  //   Im: -alpha phi^Im A_GI X^Im - gamma phi^Re M_GI X^Re
  for (int j = 0; j < 2; ++j) {
    const auto& bs = *blocks[j];
    const auto& sep = lx[j]->sep;
    const Mat m_gi(bs.M_GI);
    for (size_t n1 = 0; n1 < bs.A_GI.size(); ++n1) {
      const Mat a_gi(bs.A_GI[n1]);
      const CoeffDesc alpha = CoeffDesc::alpha(bs.op_term_index[n1]);
      for (int n2 = 0; n2 < upto[j]; ++n2) {
        S.real_terms.push_back(
            {CoeffDesc::product(alpha, CoeffDesc::zeta_re(slots[j], n2)),
             globalize(Mat(-a_gi * sep.modes_re[n2]), bs.local_of_global)});
        S.imag_terms.push_back(
            {CoeffDesc::product(alpha, CoeffDesc::zeta_im(slots[j], n2)),
             globalize(Mat(-a_gi * sep.modes_im[n2]), bs.local_of_global)});
      }
    }
    for (int n2 = 0; n2 < upto[j]; ++n2) {
      S.real_terms.push_back(
          {CoeffDesc::product(CoeffDesc::gamma(), CoeffDesc::zeta_im(slots[j], n2)),
           globalize(Mat(m_gi * sep.modes_im[n2]), bs.local_of_global)});
      S.imag_terms.push_back(
          {CoeffDesc::product(CoeffDesc::gamma(), CoeffDesc::zeta_re(slots[j], n2)),
           globalize(Mat(-m_gi * sep.modes_re[n2]), bs.local_of_global)});
    }
  }
  // Zero-pad the imaginary list to m_s terms.
  while (S.imag_terms.size() < S.real_terms.size())
    S.imag_terms.push_back({CoeffDesc::constant(0.0), Mat()});
  return S;
}

AffineLoad assemble_affine_f(const BlockSet& b1, const BlockSet& b2,
                             const SeparatedSolution& y1,
                             const SeparatedSolution& y2, int upto1, int upto2) {
  AffineLoad F;
  F.n_g = b1.n_g();
  const BlockSet* blocks[2] = {&b1, &b2};
  const SeparatedSolution* ys[2] = {&y1, &y2};
  const Slot slots[2] = {Slot::F1, Slot::F2};
  const int upto[2] = {upto1 < 0 ? y1.n_terms() : std::min(upto1, y1.n_terms()),
                       upto2 < 0 ? y2.n_terms() : std::min(upto2, y2.n_terms())};

  for (int j = 0; j < 2; ++j) {
    const auto& bs = *blocks[j];
    for (size_t q = 0; q < bs.f_G.size(); ++q) {
      F.real_terms.push_back({CoeffDesc::src_re(bs.rhs_source_index[q]),
                              globalize_vec(bs.f_G[q], bs.local_of_global)});
      F.imag_terms.push_back({CoeffDesc::src_im(bs.rhs_source_index[q]),
                              globalize_vec(bs.f_G[q], bs.local_of_global)});
    }
  }
  for (int j = 0; j < 2; ++j) {
    const auto& bs = *blocks[j];
    const auto& sep = *ys[j];
    const Mat m_gi(bs.M_GI);
    for (size_t n1 = 0; n1 < bs.A_GI.size(); ++n1) {
      const Mat a_gi(bs.A_GI[n1]);
      const CoeffDesc alpha = CoeffDesc::alpha(bs.op_term_index[n1]);
      for (int n2 = 0; n2 < upto[j]; ++n2) {
        F.real_terms.push_back(
            {CoeffDesc::product(alpha, CoeffDesc::zeta_re(slots[j], n2)),
             globalize_vec(Vec(-a_gi * sep.modes_re[n2].col(0)), bs.local_of_global)});
        F.imag_terms.push_back(
            {CoeffDesc::product(alpha, CoeffDesc::zeta_im(slots[j], n2)),
             globalize_vec(Vec(-a_gi * sep.modes_im[n2].col(0)), bs.local_of_global)});
      }
    }
    for (int n2 = 0; n2 < upto[j]; ++n2) {
      F.real_terms.push_back(
          {CoeffDesc::product(CoeffDesc::gamma(), CoeffDesc::zeta_im(slots[j], n2)),
           globalize_vec(Vec(m_gi * sep.modes_im[n2].col(0)), bs.local_of_global)});
      F.imag_terms.push_back(
          {CoeffDesc::product(CoeffDesc::gamma(), CoeffDesc::zeta_re(slots[j], n2)),
           globalize_vec(Vec(-m_gi * sep.modes_re[n2].col(0)), bs.local_of_global)});
    }
  }
  return F;
}

}  // namespace ftddvs
