// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "core/param.hpp"
#include "core/problem.hpp"

namespace ftddvs {

struct SeparatedSolution;

/// Trained-object slots a coefficient may reference. The affine Schur and
/// load coefficients reference the X/F separated solutions; subdomain ROM
/// coefficients reference the interface ROM.
enum class Slot : int { X1 = 0, X2, F1, F2, Interface, Sub1, Sub2, Count };

/// Serializable scalar function of mu: a base coefficient, a zeta
/// coefficient of a referenced separated solution, or a product.
struct CoeffDesc {
  enum class Kind : int {
    Const = 0,
    Alpha,    // alpha_j(mu): index = problem op-term
    Gamma,    // omega
    SrcRe,    // sigma_q(xi) * Re ghat_q(omega): index = source term
    SrcIm,    // sigma_q(xi) * Im ghat_q(omega)
    ZetaRe,   // zeta_k^{Re}(mu) of solution in `slot`: index = k
    ZetaIm,
    Product,
  };
  Kind kind = Kind::Const;
  double value = 0.0;
  int index = 0;
  int slot = 0;
  std::vector<CoeffDesc> factors;

  static CoeffDesc constant(double v);
  static CoeffDesc alpha(int j);
  static CoeffDesc gamma();
  static CoeffDesc src_re(int q);
  static CoeffDesc src_im(int q);
  static CoeffDesc zeta_re(Slot s, int k);
  static CoeffDesc zeta_im(Slot s, int k);
  static CoeffDesc product(CoeffDesc a, CoeffDesc b);
};

/// Per-mu cache of zeta tables; avoids recomputing a referenced solution's
/// recurrence for every coefficient that mentions it. Invalidated
/// automatically when evaluation moves to another mu.
struct ZetaMemo {
  ParameterPoint mu{std::nan(""), Vec()};
  std::array<std::vector<std::pair<double, double>>, size_t(Slot::Count)> tables;
  std::array<bool, size_t(Slot::Count)> filled{};
};

/// Evaluation context binding base coefficients to a problem and zeta
/// references to trained solutions.
struct CoeffContext {
  const ProblemDefinition* problem = nullptr;
  std::array<const SeparatedSolution*, size_t(Slot::Count)> slots{};
  ZetaMemo* memo = nullptr;  // optional, owned by the caller

  const SeparatedSolution* slot(int s) const { return slots[size_t(s)]; }
  void bind(Slot s, const SeparatedSolution* sol) { slots[size_t(s)] = sol; }

  double eval(const CoeffDesc& d, const ParameterPoint& mu) const;
};

}  // namespace ftddvs
