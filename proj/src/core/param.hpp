// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "core/types.hpp"

namespace ftddvs {

/// One point mu = (omega, xi): the frequency plus the physical parameters.
struct ParameterPoint {
  double omega = 0.0;
  Vec xi;
};

/// Per-component closed interval for the physical parameters.
struct ParameterBox {
  std::vector<double> lo;
  std::vector<double> hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Vec& xi, double slack = 1e-12) const {
    if (xi.size() != dim()) return false;
    for (int d = 0; d < dim(); ++d)
      if (xi[d] < lo[d] - slack || xi[d] > hi[d] + slack) return false;
    return true;
  }
};

/// Deterministic uniform generator. std::uniform_real_distribution is
/// implementation-defined, so doubles are derived from the raw 64-bit
/// stream directly to keep outputs reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return (gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::uint64_t integer(std::uint64_t n) { return gen_() % n; }

  Vec uniform_in(const ParameterBox& box) {
    Vec xi(box.dim());
    for (int d = 0; d < box.dim(); ++d) xi[d] = uniform(box.lo[d], box.hi[d]);
    return xi;
  }

 private:
  std::mt19937_64 gen_;
};

/// Training sample collection for the greedy loop (the set Xi).
struct SampleSet {
  std::vector<ParameterPoint> points;
  std::uint64_t rng_seed = 0;
};

}  // namespace ftddvs
