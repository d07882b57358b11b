// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "core/coeff.hpp"
#include "core/param.hpp"
#include "core/types.hpp"

namespace ftddvs {

/// Real matrix term of an affine operator, sparse or dense.
struct OpMat {
  std::variant<SpMat, Mat> m;

  OpMat() = default;
  OpMat(SpMat s) : m(std::move(s)) {}
  OpMat(Mat d) : m(std::move(d)) {}

  int rows() const;
  int cols() const;
  bool is_dense() const { return std::holds_alternative<Mat>(m); }
  Mat apply(const Mat& x) const;
  void add_to(Mat& acc, double scale) const;
};

struct AffineTerm {
  CoeffDesc coeff;
  OpMat mat;
};

/// One affine right-hand-side term; either part may be absent.
struct RhsTerm {
  bool has_re = false;
  bool has_im = false;
  CoeffDesc coeff_re;
  CoeffDesc coeff_im;
  Mat F_re;
  Mat F_im;
};

/// Affine complex system A(mu) X = b(mu) with
///   A(mu) = sum_j alpha_j(mu) A_j + i sum_g gamma_g(mu) M_g,
/// solved for an n x r matrix X (r = 1 for field problems).
struct AffineComplexSystem {
  int n = 0;
  int r = 1;
  std::vector<AffineTerm> real_ops;
  std::vector<AffineTerm> imag_ops;
  std::vector<RhsTerm> rhs;

  bool is_dense() const;
  std::pair<Mat, Mat> rhs_at(const CoeffContext& ctx, const ParameterPoint& mu) const;
  /// Complex product (Re, Im) of A(mu) with (Xre + i Xim).
  std::pair<Mat, Mat> apply(const CoeffContext& ctx, const ParameterPoint& mu,
                            const Mat& Xre, const Mat& Xim) const;
  CMat dense_matrix(const CoeffContext& ctx, const ParameterPoint& mu) const;
  SpCMat sparse_matrix(const CoeffContext& ctx, const ParameterPoint& mu) const;
};

/// Complex Frobenius norm of a (Re, Im) pair.
double complex_norm(const Mat& re, const Mat& im);

/// Direct solve of A(mu) X = (Bre + i Bim); relative residual is checked
/// and a singular system raises with mu echoed.
std::pair<Mat, Mat> solve_snapshot(const AffineComplexSystem& system,
                                   const CoeffContext& ctx, const ParameterPoint& mu,
                                   const Mat& Bre, const Mat& Bim);

/// Reduced scalar data: everything needed to run the zeta recurrences
/// without touching length-n vectors.
struct ReducedData {
  std::vector<Mat> a_rr;  // per real op term: (c_k^Re)^T A_j c_l^Re
  std::vector<Mat> a_ii;  // per real op term: (c_k^Im)^T A_j c_l^Im
  std::vector<Mat> m_ri;  // per imag op term: (c_k^Re)^T M_g c_l^Im
  std::vector<Mat> m_ir;  // per imag op term: (c_k^Im)^T M_g c_l^Re
  Mat f_re;               // N x n_rhs: (c_k^Re)^T F_q^Re
  Mat f_im;               // N x n_rhs: (c_k^Im)^T F_q^Im
};

/// Rank-N separated representation sum_k (zeta_k^Re(mu) c_k^Re +
/// i zeta_k^Im(mu) c_k^Im) with dimension-independent coefficient
/// evaluation through `reduced`.
struct SeparatedSolution {
  int n = 0;
  int r = 1;
  std::vector<Mat> modes_re;
  std::vector<Mat> modes_im;
  std::vector<char> has_re;
  std::vector<char> has_im;
  ReducedData reduced;

  // Coefficient descriptors of the training system (serialized with the
  // solution so zetas can be evaluated after reload).
  std::vector<CoeffDesc> alpha_descs;
  std::vector<CoeffDesc> gamma_descs;
  std::vector<RhsTerm> rhs_descs;  // F matrices cleared after training

  std::vector<ParameterPoint> chosen_samples;
  std::vector<double> residual_history;  // max over Xi after each term
  double rhs_scale = 1.0;
  std::uint64_t rng_seed = 0;
  bool cap_warning = false;      // n_max hit before the tolerance
  bool exhausted = false;        // Xi ran out
  mutable bool degenerate_flag = false;  // some zeta fell back to 0

  int n_terms() const { return static_cast<int>(modes_re.size()); }

  /// All (zeta^Re, zeta^Im) pairs at mu from reduced data only.
  std::vector<std::pair<double, double>> zeta_table(const CoeffContext& ctx,
                                                    const ParameterPoint& mu,
                                                    int upto = -1) const;
  /// Mode expansion (Re, Im) at mu.
  std::pair<Mat, Mat> evaluate(const CoeffContext& ctx, const ParameterPoint& mu,
                               int upto = -1) const;
  CVec evaluate_vector(const CoeffContext& ctx, const ParameterPoint& mu,
                       int upto = -1) const;
};

struct GreedyOptions {
  double epsilon = 1e-8;  // relative to the first right-hand-side norm
  int n_max = 50;
};

/// Algorithm: greedy variable separation for the affine complex system.
/// mu_1 is drawn from `samples` with its seed; subsequent picks maximize
/// the residual norm over the remaining samples (ties to the lowest index).
SeparatedSolution vs_greedy(const AffineComplexSystem& system,
                            const SampleSet& samples, const CoeffContext& ctx,
                            const GreedyOptions& opts);

/// Full-dimension zeta recurrence (oracle path for tests): identical
/// formulas evaluated with explicit length-n residual vectors.
std::vector<std::pair<double, double>> zeta_table_full(
    const AffineComplexSystem& system, const SeparatedSolution& sol,
    const CoeffContext& ctx, const ParameterPoint& mu, int upto = -1);

}  // namespace ftddvs
