// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "core/config.hpp"
#include "core/frequency.hpp"
#include "core/rom.hpp"

namespace ftddvs {

/// Everything the offline stage trains, together with the discretization it
/// was trained on. The discretization (mesh, assembly, blocks) is rebuilt
/// deterministically from the configuration on load; the artifact file
/// stores only configuration and trained data.
struct OfflineModel {
  static constexpr int kFormatVersion = 1;

  RunConfig config;

  // Rebuilt from config:
  ProblemDefinition problem;
  Mesh2D mesh;
  DomainPartition partition;
  Assembly assembly;
  BlockSet blocks[2];
  FrequencyGrid grid;

  // Trained:
  LowRankX x[2];
  SeparatedSolution yload[2];
  AffineSchur schur;
  AffineLoad load;
  InterfaceRom interface_rom;
  SubdomainRom sub_rom[2];

  void rebuild_discretization();
  CoeffContext context() const;
  CVec evaluate_hat(const CoeffContext& ctx, const ParameterPoint& mu) const;
};

void save_model(const OfflineModel& model, const std::string& path);
OfflineModel load_model(const std::string& path);

}  // namespace ftddvs
