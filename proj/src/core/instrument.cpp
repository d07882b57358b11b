// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/instrument.hpp"

namespace ftddvs {

OpCounters& op_counters() {
  thread_local OpCounters counters;
  return counters;
}

}  // namespace ftddvs
