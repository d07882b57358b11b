// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/rom.hpp"

#include <stdexcept>

namespace ftddvs {

AffineComplexSystem make_interface_system(const AffineSchur& S,
                                          const AffineLoad& F) {
  AffineComplexSystem sys;
  sys.n = S.n_g;
  sys.r = 1;
  for (const auto& t : S.real_terms)
    sys.real_ops.push_back({t.coeff, OpMat(t.mat)});
  for (const auto& t : S.imag_terms) {
    if (t.mat.size() == 0) continue;  // zero padding carries no work
    sys.imag_ops.push_back({t.coeff, OpMat(t.mat)});
  }
  for (const auto& t : F.real_terms) {
    RhsTerm r;
    r.has_re = true;
    r.coeff_re = t.coeff;
    r.F_re = t.vec;
    sys.rhs.push_back(std::move(r));
  }
  for (const auto& t : F.imag_terms) {
    if (t.vec.size() == 0) continue;
    RhsTerm r;
    r.has_im = true;
    r.coeff_im = t.coeff;
    r.F_im = t.vec;
    sys.rhs.push_back(std::move(r));
  }
  return sys;
}

InterfaceRom build_interface_rom(const AffineSchur& S, const AffineLoad& F,
                                 const SampleSet& samples, const CoeffContext& ctx,
                                 const GreedyOptions& opts) {
  InterfaceRom rom;
  rom.sep = vs_greedy(make_interface_system(S, F), samples, ctx, opts);
  return rom;
}

AffineComplexSystem make_subdomain_system(const BlockSet& bs,
                                          const SeparatedSolution& interface_sep,
                                          int upto_interface) {
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

  // -A_IG(mu) u_G(mu) with u_G in separated form; each interface mode
  // becomes an affine right-hand-side term:
  //   Re: -alpha zeta^Re A_IG c^Re + gamma zeta^Im M_IG c^Im
  //   Im: -alpha zeta^Im A_IG c^Im - gamma zeta^Re M_IG c^Re
  const int n_gamma = upto_interface < 0
                          ? interface_sep.n_terms()
                          : std::min(upto_interface, interface_sep.n_terms());
  const Mat m_ig(bs.M_IG);
  for (int l = 0; l < n_gamma; ++l) {
    Vec c_re_loc(bs.n_g()), c_im_loc(bs.n_g());
    for (int a = 0; a < bs.n_g(); ++a) {
      c_re_loc[bs.local_of_global[a]] = interface_sep.modes_re[l](a, 0);
      c_im_loc[bs.local_of_global[a]] = interface_sep.modes_im[l](a, 0);
    }
    for (size_t n1 = 0; n1 < bs.A_IG.size(); ++n1) {
      RhsTerm t;
      t.has_re = t.has_im = true;
      const CoeffDesc alpha = CoeffDesc::alpha(bs.op_term_index[n1]);
      t.coeff_re = CoeffDesc::product(alpha, CoeffDesc::zeta_re(Slot::Interface, l));
      t.coeff_im = CoeffDesc::product(alpha, CoeffDesc::zeta_im(Slot::Interface, l));
      t.F_re = Vec(-(bs.A_IG[n1] * c_re_loc));
      t.F_im = Vec(-(bs.A_IG[n1] * c_im_loc));
      sys.rhs.push_back(std::move(t));
    }
    RhsTerm t;
    t.has_re = t.has_im = true;
    t.coeff_re = CoeffDesc::product(CoeffDesc::gamma(),
                                    CoeffDesc::zeta_im(Slot::Interface, l));
    t.coeff_im = CoeffDesc::product(CoeffDesc::gamma(),
                                    CoeffDesc::zeta_re(Slot::Interface, l));
    t.F_re = Vec(m_ig * c_im_loc);
    t.F_im = Vec(-(m_ig * c_re_loc));
    sys.rhs.push_back(std::move(t));
  }
  return sys;
}

SubdomainRom build_subdomain_rom(const BlockSet& bs,
                                 const SeparatedSolution& interface_sep,
                                 const SampleSet& samples, const CoeffContext& ctx,
                                 const GreedyOptions& opts) {
  SubdomainRom rom;
  rom.subdomain = bs.j;
  rom.sep = vs_greedy(make_subdomain_system(bs, interface_sep), samples, ctx, opts);
  return rom;
}

CVec evaluate_full_field(const InterfaceRom& interface_rom,
                         const SubdomainRom& sub1, const SubdomainRom& sub2,
                         const DomainPartition& part, const CoeffContext& ctx,
                         const ParameterPoint& mu, int n_free) {
  if (interface_rom.sep.n != part.n_interface() ||
      sub1.sep.n != part.n_interior(0) || sub2.sep.n != part.n_interior(1))
    throw std::invalid_argument(
        "evaluate_full_field: ROMs were built against a different partition");

  CVec out = CVec::Zero(n_free);
  const CVec u_g = interface_rom.sep.evaluate_vector(ctx, mu);
  for (int a = 0; a < part.n_interface(); ++a) out[part.interface_dofs[a]] = u_g[a];
  const SubdomainRom* subs[2] = {&sub1, &sub2};
  for (int j = 0; j < 2; ++j) {
    const CVec u_i = subs[j]->sep.evaluate_vector(ctx, mu);
    for (int k = 0; k < part.n_interior(j); ++k)
      out[part.interior_dofs[j][k]] = u_i[k];
  }
  return out;
}

Vec free_to_vertex(const Vec& field, const Mesh2D& mesh) {
  const auto dof = free_dof_map(mesh);
  Vec out = Vec::Zero(mesh.n_vertices());
  for (int v = 0; v < mesh.n_vertices(); ++v)
    if (dof[v] >= 0) out[v] = field[dof[v]];
  return out;
}

}  // namespace ftddvs
