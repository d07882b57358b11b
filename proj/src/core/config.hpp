// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

namespace ftddvs {

/// Full run configuration: discretization, training and evaluation
/// settings. Presets carry the published settings for the three problems.
struct RunConfig {
  std::string problem = "heat";
  int nx = 50;
  int ny = 50;
  double tau = 5e-4;
  double omega_max = 20.0;
  int n_omega = 20;

  int train_samples = 10;  // |Xi|
  std::uint64_t train_seed = 20260101;
  double tol_x = 1e-8;
  double tol_f = 1e-8;
  double tol_interface = 1e-8;
  double tol_subdomain = 1e-8;
  int n_s = 4;      // cap on N_{S_j}
  int n_f = 4;      // cap on N_{F_j}
  int n_gamma = 1;  // cap on N_Gamma
  int n_i = 4;      // cap on N_I (shared between subdomains)

  int eval_samples = 1000;  // M
  std::uint64_t eval_seed = 42;
  std::string out_dir = "out";
};

RunConfig preset(const std::string& name);

void validate(const RunConfig& cfg);

/// Dotted-path field access ("mesh.nx", "tol.x", ...); values parsed from
/// strings. Unknown keys raise.
void set_field(RunConfig& cfg, const std::string& key, const std::string& value);
std::string get_field(const RunConfig& cfg, const std::string& key);

std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const std::string& text);
RunConfig load_config_file(const std::string& path);

/// Short deterministic hash of the configuration (timing-independent),
/// used to key report artifacts.
std::string config_hash(const RunConfig& cfg);

}  // namespace ftddvs
