// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace ftddvs {

/// Work counters for the online-cost contract. `scalar_ops` counts the
/// dimension-independent coefficient work (zeta recurrences, coefficient
/// and quadrature evaluations); `vector_elems` counts elements touched by
/// field-sized vector work (mode expansion, reconstruction).
struct OpCounters {
  std::uint64_t scalar_ops = 0;
  std::uint64_t vector_elems = 0;

  void reset() { scalar_ops = 0; vector_elems = 0; }
};

OpCounters& op_counters();

inline void count_scalar(std::uint64_t n = 1) { op_counters().scalar_ops += n; }
inline void count_vector(std::uint64_t elems) { op_counters().vector_elems += elems; }

}  // namespace ftddvs
