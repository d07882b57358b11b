// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ftddvs/ftddvs.h"

namespace {

struct ConfigDeleter {
  void operator()(ftddvs_config* c) const { ftddvs_config_destroy(c); }
};
using ConfigPtr = std::unique_ptr<ftddvs_config, ConfigDeleter>;

int die(ftddvs_status status) {
  std::fprintf(stderr, "error (%s): %s\n", ftddvs_status_string(status),
               ftddvs_last_error());
  return 1;
}

ConfigPtr make_config(const std::string& preset, const std::string& config_file,
                      const std::vector<std::string>& sets, ftddvs_status* status) {
  ftddvs_config* raw = nullptr;
  *status = config_file.empty() ? ftddvs_config_create(preset.c_str(), &raw)
                                : ftddvs_config_load(config_file.c_str(), &raw);
  ConfigPtr cfg(raw);
  if (*status != FTDDVS_OK) return cfg;
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n",
                   kv.c_str());
      *status = FTDDVS_ERR_INVALID_ARGUMENT;
      return cfg;
    }
    *status = ftddvs_config_set(cfg.get(), kv.substr(0, eq).c_str(),
                                kv.substr(eq + 1).c_str());
    if (*status != FTDDVS_OK) return cfg;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ftddvs: frequency-domain reduced-order solver for parametric "
      "parabolic problems (offline training / online evaluation)"};
  app.require_subcommand(1);

  std::string preset = "heat", config_file, artifact = "model.json",
              out_dir = "out", quantity = "n_gamma", seed;
  std::vector<std::string> sets, report_dirs;
  int n_min = 1, n_max = 6;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--preset", preset, "Problem preset: heat | rd1 | rd2");
    cmd->add_option("--config", config_file, "JSON config file (overrides preset)");
    cmd->add_option("--set", sets, "Override a config field, key=value")
        ->take_all();
    cmd->add_option("--seed", seed, "Shorthand for --set train.seed=<v>");
    cmd->add_option("--out", out_dir, "Output directory");
  };

  auto* offline = app.add_subcommand("offline", "Train the offline model");
  add_common(offline);
  offline->add_option("--artifact", artifact, "Model artifact path");

  auto* online = app.add_subcommand("online", "Evaluate samples with the model");
  add_common(online);
  online->add_option("--artifact", artifact, "Model artifact path");

  auto* reference = app.add_subcommand("reference", "FEM-BE trajectory export");
  add_common(reference);

  auto* sweep = app.add_subcommand("sweep", "Error decay over separate terms");
  add_common(sweep);
  sweep->add_option("--quantity", quantity, "n_s | n_f | n_gamma | n_i");
  sweep->add_option("--n-min", n_min, "Smallest term count");
  sweep->add_option("--n-max", n_max, "Largest term count");

  auto* report = app.add_subcommand("report", "Tables and plots from runs");
  report->add_option("runs", report_dirs, "Online output directories")
      ->required();
  report->add_option("--out", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  if (!seed.empty()) sets.push_back("train.seed=" + seed);

  ftddvs_status status = FTDDVS_OK;
  if (report->parsed()) {
    std::vector<const char*> dirs;
    for (const auto& d : report_dirs) dirs.push_back(d.c_str());
    status = ftddvs_report(dirs.data(), dirs.size(), out_dir.c_str());
    if (status != FTDDVS_OK) return die(status);
    std::printf("report written to %s\n", out_dir.c_str());
    return 0;
  }

  ConfigPtr cfg = make_config(preset, config_file, sets, &status);
  if (status != FTDDVS_OK) return die(status);

  if (offline->parsed()) {
    status = ftddvs_offline(cfg.get(), artifact.c_str());
    if (status == FTDDVS_OK)
      std::printf("offline model written to %s\n", artifact.c_str());
  } else if (online->parsed()) {
    status = ftddvs_online(cfg.get(), artifact.c_str(), out_dir.c_str());
    if (status == FTDDVS_OK)
      std::printf("online outputs written to %s\n", out_dir.c_str());
  } else if (reference->parsed()) {
    status = ftddvs_reference(cfg.get(), out_dir.c_str());
  } else if (sweep->parsed()) {
    status = ftddvs_sweep(cfg.get(), quantity.c_str(), n_min, n_max,
                          out_dir.c_str());
    if (status == FTDDVS_OK)
      std::printf("sweep outputs written to %s\n", out_dir.c_str());
  }
  return status == FTDDVS_OK ? 0 : die(status);
}
