// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include "ftddvs/ftddvs.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "core/config.hpp"
#include "core/pipeline.hpp"
#include "core/report.hpp"

namespace {

thread_local std::string g_last_error;

ftddvs_status fail(ftddvs_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
ftddvs_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(FTDDVS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(FTDDVS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    return fail(FTDDVS_ERR_NUMERICAL, e.what());
  } catch (const std::exception& e) {
    return fail(FTDDVS_ERR_INTERNAL, e.what());
  }
}

}  // namespace

struct ftddvs_config {
  ftddvs::RunConfig cfg;
};

struct ftddvs_model {
  ftddvs::OfflineModel model;
  ftddvs::CoeffContext ctx;  // bound to `model`
};

extern "C" {

const char* ftddvs_status_string(ftddvs_status status) {
  switch (status) {
    case FTDDVS_OK: return "ok";
    case FTDDVS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FTDDVS_ERR_IO: return "i/o error";
    case FTDDVS_ERR_NUMERICAL: return "numerical error";
    case FTDDVS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ftddvs_last_error(void) { return g_last_error.c_str(); }

ftddvs_status ftddvs_config_create(const char* preset_name, ftddvs_config** out) {
  if (!preset_name || !out)
    return fail(FTDDVS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new ftddvs_config{ftddvs::preset(preset_name)};
    return FTDDVS_OK;
  });
}

ftddvs_status ftddvs_config_load(const char* path, ftddvs_config** out) {
  if (!path || !out) return fail(FTDDVS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new ftddvs_config{ftddvs::load_config_file(path)};
    return FTDDVS_OK;
  });
}

ftddvs_status ftddvs_config_save(const ftddvs_config* cfg, const char* path) {
  if (!cfg || !path) return fail(FTDDVS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::ofstream outf(path);
    if (!outf)
      return fail(FTDDVS_ERR_IO, std::string("cannot write '") + path + "'");
    outf << ftddvs::config_to_json(cfg->cfg) << "\n";
    return FTDDVS_OK;
  });
}

ftddvs_status ftddvs_config_set(ftddvs_config* cfg, const char* key,
                                const char* value) {
  if (!cfg || !key || !value)
    return fail(FTDDVS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    ftddvs::set_field(cfg->cfg, key, value);
    return FTDDVS_OK;
  });
}

ftddvs_status ftddvs_config_get(const ftddvs_config* cfg, const char* key,
                                char* buffer, size_t buffer_size) {
  if (!cfg || !key || !buffer || buffer_size == 0)
    return fail(FTDDVS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string value = ftddvs::get_field(cfg->cfg, key);
    if (value.size() + 1 > buffer_size)
      return fail(FTDDVS_ERR_INVALID_ARGUMENT, "buffer too small");
    std::memcpy(buffer, value.c_str(), value.size() + 1);
    return FTDDVS_OK;
  });
}

void ftddvs_config_destroy(ftddvs_config* cfg) { delete cfg; }

ftddvs_status ftddvs_offline(const ftddvs_config* cfg, const char* artifact_path) {
  if (!cfg || !artifact_path)
    return fail(FTDDVS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto model = ftddvs::run_offline(cfg->cfg, &std::cout);
    ftddvs::save_model(model, artifact_path);
    return FTDDVS_OK;
  });
}

ftddvs_status ftddvs_online(const ftddvs_config* cfg, const char* artifact_path,
                            const char* out_dir) {
  if (!cfg || !artifact_path || !out_dir)
    return fail(FTDDVS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto model = ftddvs::load_model(artifact_path);
    const auto report = ftddvs::run_online(cfg->cfg, model, &std::cout);
    ftddvs::write_online_outputs(report, out_dir);
    return FTDDVS_OK;
  });
}

ftddvs_status ftddvs_reference(const ftddvs_config* cfg, const char* out_dir) {
  if (!cfg || !out_dir) return fail(FTDDVS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    ftddvs::run_reference(cfg->cfg, out_dir, &std::cout);
    return FTDDVS_OK;
  });
}

ftddvs_status ftddvs_sweep(const ftddvs_config* cfg, const char* quantity,
                           int n_min, int n_max, const char* out_dir) {
  if (!cfg || !quantity || !out_dir)
    return fail(FTDDVS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto result =
        ftddvs::run_sweep(cfg->cfg, quantity, n_min, n_max, &std::cout);
    ftddvs::write_sweep_outputs(result, cfg->cfg, out_dir);
    return FTDDVS_OK;
  });
}

ftddvs_status ftddvs_report(const char* const* run_dirs, size_t n_dirs,
                            const char* out_dir) {
  if (!run_dirs || n_dirs == 0 || !out_dir)
    return fail(FTDDVS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<std::string> dirs(run_dirs, run_dirs + n_dirs);
    ftddvs::report_from_dirs(dirs, out_dir);
    return FTDDVS_OK;
  });
}

ftddvs_status ftddvs_model_load(const char* artifact_path, ftddvs_model** out) {
  if (!artifact_path || !out)
    return fail(FTDDVS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto* handle = new ftddvs_model{ftddvs::load_model(artifact_path), {}};
    handle->ctx = handle->model.context();
    *out = handle;
    return FTDDVS_OK;
  });
}

void ftddvs_model_destroy(ftddvs_model* model) { delete model; }

ftddvs_status ftddvs_model_dims(const ftddvs_model* model, int* n_free,
                                int* n_interface, int* xi_dim, int* n_omega) {
  if (!model) return fail(FTDDVS_ERR_INVALID_ARGUMENT, "null model");
  if (n_free) *n_free = model->model.assembly.n_free();
  if (n_interface) *n_interface = model->model.partition.n_interface();
  if (xi_dim) *xi_dim = model->model.problem.box.dim();
  if (n_omega) *n_omega = model->model.grid.n_omega;
  return FTDDVS_OK;
}

ftddvs_status ftddvs_model_evaluate_hat(const ftddvs_model* model, double omega,
                                        const double* xi, size_t xi_len,
                                        double* re, double* im) {
  if (!model || !xi || !re || !im)
    return fail(FTDDVS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    if (static_cast<int>(xi_len) != model->model.problem.box.dim())
      return fail(FTDDVS_ERR_INVALID_ARGUMENT, "xi dimension mismatch");
    ftddvs::ParameterPoint mu;
    mu.omega = omega;
    mu.xi = Eigen::Map<const ftddvs::Vec>(xi, xi_len);
    const ftddvs::CVec field = model->model.evaluate_hat(model->ctx, mu);
    for (int i = 0; i < field.size(); ++i) {
      re[i] = field[i].real();
      im[i] = field[i].imag();
    }
    return FTDDVS_OK;
  });
}

ftddvs_status ftddvs_model_evaluate_time(const ftddvs_model* model,
                                         const double* xi, size_t xi_len,
                                         double t, double* out) {
  if (!model || !xi || !out)
    return fail(FTDDVS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    if (static_cast<int>(xi_len) != model->model.problem.box.dim())
      return fail(FTDDVS_ERR_INVALID_ARGUMENT, "xi dimension mismatch");
    const ftddvs::Vec xiv = Eigen::Map<const ftddvs::Vec>(xi, xi_len);
    std::vector<ftddvs::CVec> hats(model->model.grid.n_omega);
    for (int j = 0; j < model->model.grid.n_omega; ++j)
      hats[j] = model->model.evaluate_hat(model->ctx,
                                          {model->model.grid.nodes[j], xiv});
    const ftddvs::Vec u = ftddvs::inverse_transform(hats, model->model.grid, t);
    for (int i = 0; i < u.size(); ++i) out[i] = u[i];
    return FTDDVS_OK;
  });
}

}  // extern "C"
