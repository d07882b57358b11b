// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/coeff.hpp"

#include <stdexcept>

#include "core/frequency.hpp"
#include "core/instrument.hpp"
#include "core/separated.hpp"

namespace ftddvs {

CoeffDesc CoeffDesc::constant(double v) {
  CoeffDesc d;
  d.kind = Kind::Const;
  d.value = v;
  return d;
}
CoeffDesc CoeffDesc::alpha(int j) {
  CoeffDesc d;
  d.kind = Kind::Alpha;
  d.index = j;
  return d;
}
CoeffDesc CoeffDesc::gamma() {
  CoeffDesc d;
  d.kind = Kind::Gamma;
  return d;
}
CoeffDesc CoeffDesc::src_re(int q) {
  CoeffDesc d;
  d.kind = Kind::SrcRe;
  d.index = q;
  return d;
}
CoeffDesc CoeffDesc::src_im(int q) {
  CoeffDesc d;
  d.kind = Kind::SrcIm;
  d.index = q;
  return d;
}
CoeffDesc CoeffDesc::zeta_re(Slot s, int k) {
  CoeffDesc d;
  d.kind = Kind::ZetaRe;
  d.slot = int(s);
  d.index = k;
  return d;
}
CoeffDesc CoeffDesc::zeta_im(Slot s, int k) {
  CoeffDesc d;
  d.kind = Kind::ZetaIm;
  d.slot = int(s);
  d.index = k;
  return d;
}
CoeffDesc CoeffDesc::product(CoeffDesc a, CoeffDesc b) {
  CoeffDesc d;
  d.kind = Kind::Product;
  d.factors = {std::move(a), std::move(b)};
  return d;
}

double CoeffContext::eval(const CoeffDesc& d, const ParameterPoint& mu) const {
  count_scalar();
  switch (d.kind) {
    case CoeffDesc::Kind::Const:
      return d.value;
    case CoeffDesc::Kind::Alpha:
      return problem->op_terms.at(d.index).alpha(mu);
    case CoeffDesc::Kind::Gamma:
      return gamma_of(mu);
    case CoeffDesc::Kind::SrcRe:
    case CoeffDesc::Kind::SrcIm: {
      const auto& src = problem->sources.at(d.index);
      const Complex ghat = problem->source_transform(d.index, mu.omega);
      const double part =
          d.kind == CoeffDesc::Kind::SrcRe ? ghat.real() : ghat.imag();
      return src.sigma(mu.xi) * part;
    }
    case CoeffDesc::Kind::ZetaRe:
    case CoeffDesc::Kind::ZetaIm: {
      const SeparatedSolution* sol = slot(d.slot);
      if (!sol)
        throw std::runtime_error("CoeffContext: zeta reference to unbound slot");
      if (memo) {
        const bool same = memo->mu.omega == mu.omega &&
                          memo->mu.xi.size() == mu.xi.size() &&
                          (memo->mu.xi - mu.xi).squaredNorm() == 0.0;
        if (!same) {
          memo->mu = mu;
          memo->filled.fill(false);
        }
        auto& entry = memo->tables[d.slot];
        if (!memo->filled[d.slot]) {
          entry = sol->zeta_table(*this, mu);
          memo->filled[d.slot] = true;
        }
        const auto& pair = entry.at(d.index);
        return d.kind == CoeffDesc::Kind::ZetaRe ? pair.first : pair.second;
      }
      const auto table = sol->zeta_table(*this, mu);
      const auto& pair = table.at(d.index);
      return d.kind == CoeffDesc::Kind::ZetaRe ? pair.first : pair.second;
    }
    case CoeffDesc::Kind::Product: {
      double v = 1.0;
      for (const auto& f : d.factors) v *= eval(f, mu);
      return v;
    }
  }
  throw std::logic_error("CoeffContext: unreachable coefficient kind");
}

}  // namespace ftddvs
