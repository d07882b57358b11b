// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/mesh.hpp"
#include "core/schur.hpp"

namespace ftddvs {

/// Affine complex system of the reformulated interface problem
/// S(mu) u_G = F(mu).
AffineComplexSystem make_interface_system(const AffineSchur& S,
                                          const AffineLoad& F);

/// Reduced model of the interface problem: VS applied to the affine system.
struct InterfaceRom {
  SeparatedSolution sep;  // over n_g dofs
  int n_terms() const { return sep.n_terms(); }
};

InterfaceRom build_interface_rom(const AffineSchur& S, const AffineLoad& F,
                                 const SampleSet& samples, const CoeffContext& ctx,
                                 const GreedyOptions& opts);

/// Interior recovery system A_II(mu) u_I = f_I(mu) - A_IG(mu) u_G(mu) with
/// the interface solution substituted by its separated form (the context
/// must bind the interface solution at Slot::Interface). `upto_interface`
/// truncates the interface expansion used for the right-hand side.
AffineComplexSystem make_subdomain_system(const BlockSet& bs,
                                          const SeparatedSolution& interface_sep,
                                          int upto_interface = -1);

struct SubdomainRom {
  int subdomain = 0;
  SeparatedSolution sep;  // over |I_j| dofs
  int n_terms() const { return sep.n_terms(); }
};

SubdomainRom build_subdomain_rom(const BlockSet& bs,
                                 const SeparatedSolution& interface_sep,
                                 const SampleSet& samples, const CoeffContext& ctx,
                                 const GreedyOptions& opts);

/// Scatters the interface and interior ROM evaluations into one free-dof
/// field vector (Dirichlet dofs are not part of the numbering).
CVec evaluate_full_field(const InterfaceRom& interface_rom,
                         const SubdomainRom& sub1, const SubdomainRom& sub2,
                         const DomainPartition& part, const CoeffContext& ctx,
                         const ParameterPoint& mu, int n_free);

/// Expands a free-dof field onto the full vertex grid (zeros on the
/// Dirichlet boundary), for export and plotting.
Vec free_to_vertex(const Vec& field, const Mesh2D& mesh);

}  // namespace ftddvs
