// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/assembly.hpp"
#include "core/separated.hpp"

namespace ftddvs {

/// Exact local Schur complement S_j(mu) and load F_j(mu) by one complex
/// factorization of A_II(mu).
struct SchurPair {
  CMat S;
  CVec F;
};
SchurPair schur_direct(const BlockSet& bs, const CoeffContext& ctx,
                       const ParameterPoint& mu);

/// Exact non-overlapping DD solve (interface problem + interior recovery),
/// scattered back to the free-dof vector. Oracle path for the monolithic
/// identity; no VS approximation involved.
CVec dd_direct_solve(const BlockSet& b1, const BlockSet& b2,
                     const CoeffContext& ctx, const ParameterPoint& mu,
                     int n_free);

/// Affine system A_II(mu) X = A_IG(mu) over all interface columns jointly
/// (Frobenius-norm greedy).
AffineComplexSystem make_x_system(const BlockSet& bs);

/// Affine system A_II(mu) y = f_I(mu).
AffineComplexSystem make_f_system(const BlockSet& bs);

/// Low-rank separated representation of X^j(mu) = A_II(mu)^{-1} A_IG(mu).
struct LowRankX {
  int subdomain = 0;
  SeparatedSolution sep;  // matrix-valued modes X_n, coefficients phi_n
  int n_terms() const { return sep.n_terms(); }
};

LowRankX approximate_x(const BlockSet& bs, const SampleSet& samples,
                       const CoeffContext& ctx, const GreedyOptions& opts);

/// Separated representation of Y^j(mu) = A_II(mu)^{-1} f_I(mu).
SeparatedSolution approximate_interior_load(const BlockSet& bs,
                                            const SampleSet& samples,
                                            const CoeffContext& ctx,
                                            const GreedyOptions& opts);

struct SchurTerm {
  CoeffDesc coeff;
  Mat mat;  // n_g x n_g dense
};

/// Stacked affine representation of S(mu); the imaginary list is
/// zero-padded to m_s terms.
struct AffineSchur {
  int n_g = 0;
  std::vector<SchurTerm> real_terms;
  std::vector<SchurTerm> imag_terms;

  int m_s() const { return static_cast<int>(real_terms.size()); }
  CMat evaluate(const CoeffContext& ctx, const ParameterPoint& mu) const;
};

struct LoadTerm {
  CoeffDesc coeff;
  Vec vec;
};

struct AffineLoad {
  int n_g = 0;
  std::vector<LoadTerm> real_terms;
  std::vector<LoadTerm> imag_terms;

  int m_f() const { return static_cast<int>(real_terms.size()); }
  CVec evaluate(const CoeffContext& ctx, const ParameterPoint& mu) const;
};

/// Assembles the affine Schur representation from the two low-rank X
/// factors. The X solutions must be bound in the context at slots X1/X2.
/// `upto[j]` truncates subdomain j to its first terms (-1 keeps all).
AffineSchur assemble_affine_s(const BlockSet& b1, const BlockSet& b2,
                              const LowRankX& x1, const LowRankX& x2,
                              int upto1 = -1, int upto2 = -1);

/// Assembles the affine load from the two interior-load representations
/// (bound at slots F1/F2).
AffineLoad assemble_affine_f(const BlockSet& b1, const BlockSet& b2,
                             const SeparatedSolution& y1,
                             const SeparatedSolution& y2, int upto1 = -1,
                             int upto2 = -1);

}  // namespace ftddvs
