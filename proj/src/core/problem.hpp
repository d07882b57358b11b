// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "core/param.hpp"
#include "core/types.hpp"

namespace ftddvs {

enum class Support { Both, D1, D2 };

/// One mu-independent bilinear-form term a_j together with its scalar
/// coefficient alpha_j(mu). Diffusion terms integrate c grad u . grad v
/// over one subdomain, reaction terms integrate c u v.
struct OpTermDef {
  std::string tag;
  int subdomain = 0;  // 0 or 1
  enum class Kind { Diffusion, Reaction } kind = Kind::Diffusion;
  std::function<double(const ParameterPoint&)> alpha;
};

/// Separable source contribution g(t) * sigma(xi) * h(x) on one support.
/// `time_transform`, when present, is the Fourier transform of the
/// profile's natural extension to the whole time axis (closed form for the
/// shipped problems); absent, the transform falls back to numerical
/// quadrature of the zero-extended profile on [0, T].
struct SourceTermDef {
  std::string tag;
  Support support = Support::Both;
  std::function<double(double)> time_profile;
  std::function<Complex(double)> time_transform;
  std::function<double(const Vec&)> sigma;
  std::function<double(double, double)> space_profile;
};

/// The parametric parabolic problem on [0,1]^2 with homogeneous Dirichlet
/// data and zero initial condition, described by its affine ingredients.
struct ProblemDefinition {
  std::string id;  // heat | rd1 | rd2 | custom
  ParameterBox box;
  std::vector<OpTermDef> op_terms;
  std::vector<SourceTermDef> sources;
  double final_time = 1.0;
  // Present only for problems with a closed-form solution (heat).
  std::function<double(double, double, double)> analytical;

  int m_a() const { return static_cast<int>(op_terms.size()); }
  int m_b() const { return static_cast<int>(sources.size()); }
  double source_value(int q, double x1, double x2, double t, const Vec& xi) const;
  /// ghat_q(omega): closed form when available, quadrature on [0, T] else.
  Complex source_transform(int q, double omega) const;
};

/// gamma(mu) = omega: the coefficient of the imaginary mass term.
inline double gamma_of(const ParameterPoint& mu) { return mu.omega; }

ProblemDefinition make_problem(const std::string& id);

double analytical_heat(double x1, double x2, double t);

}  // namespace ftddvs
