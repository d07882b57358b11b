// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "core/mesh.hpp"
#include "core/problem.hpp"
#include "core/types.hpp"

namespace ftddvs {

struct AffineOpTerm {
  std::string tag;
  int problem_term = 0;  // index into ProblemDefinition::op_terms
  int subdomain = 0;
  SpMat mat;             // symmetric, free dofs, positive semidefinite
};

/// Affine operator data: A(mu) = sum_j alpha_j(mu) A_j + i omega M.
struct AffineOperator {
  std::vector<AffineOpTerm> terms;
  SpMat mass;         // global mass on free dofs
  SpMat mass_sub[2];  // per-subdomain mass (mass = mass_sub[0] + mass_sub[1])

  int m_a() const { return static_cast<int>(terms.size()); }
};

struct AffineRhsTerm {
  std::string tag;
  int source_index = 0;  // index into ProblemDefinition::sources
  Vec F;                 // spatial load on free dofs
};

/// Affine load data. The real and imaginary parts share the spatial
/// vectors; the split lives in the coefficients sigma_q(xi) Re/Im ghat_q(omega).
struct AffineRhs {
  std::vector<AffineRhsTerm> terms;         // global, one per source term
  std::vector<AffineRhsTerm> sub_terms[2];  // restricted to each subdomain

  int m_b() const { return static_cast<int>(terms.size()); }
  int m_b_sub(int j) const { return static_cast<int>(sub_terms[j].size()); }
};

struct Assembly {
  Mesh2D mesh;
  std::vector<int> dof_map;      // vertex -> free dof (-1 on boundary)
  std::vector<int> free_vertex;  // free dof -> vertex
  AffineOperator op;
  AffineRhs rhs;
  // Pre-elimination matrices over all vertices, kept for diagnostics.
  std::vector<SpMat> full_terms;
  SpMat full_mass;

  int n_free() const { return static_cast<int>(free_vertex.size()); }
};

/// Assembles all mu-independent matrices and load vectors of the affine
/// decomposition. Requires nx even so the interface aligns with edges.
Assembly assemble(const ProblemDefinition& problem, const Mesh2D& mesh);

/// Dense evaluation of the full complex system matrix at one mu.
SpCMat evaluate_operator(const AffineOperator& op, const ProblemDefinition& problem,
                         const ParameterPoint& mu);

/// Extracts rows/cols of a sparse matrix.
SpMat sparse_submatrix(const SpMat& m, const std::vector<int>& rows,
                       const std::vector<int>& cols);

/// Block views of the assembled operators for one subdomain.
struct BlockSet {
  int j = 0;
  std::vector<int> interior;   // free-dof ids (I_j)
  std::vector<int> interface;  // free-dof ids (Gamma), global ordering
  std::vector<int> local_of_global;  // restriction map R_j

  std::vector<int> op_term_index;  // global op-term indices living on D_j
  std::vector<SpMat> A_II, A_IG, A_GI, A_GG;
  SpMat M_II, M_IG, M_GI, M_GG;

  std::vector<int> rhs_source_index;  // global source indices with support on D_j
  std::vector<Vec> f_I, f_G;

  int n_i() const { return static_cast<int>(interior.size()); }
  int n_g() const { return static_cast<int>(interface.size()); }
  int m_a() const { return static_cast<int>(op_term_index.size()); }
  int m_b() const { return static_cast<int>(rhs_source_index.size()); }
};

BlockSet extract_blocks(const Assembly& asm_, const DomainPartition& part, int j);

}  // namespace ftddvs
