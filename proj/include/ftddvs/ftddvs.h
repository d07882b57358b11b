/* Copyright 2026 The ftddvs Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C API of the ftddvs solver library: frequency-domain reduced-order
 * modeling of parametric parabolic problems with a two-subdomain
 * decomposition. Handles are opaque; every call returns a status code and
 * the last error message is retrievable per thread.
 */

#ifndef FTDDVS_H
#define FTDDVS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ftddvs_status {
  FTDDVS_OK = 0,
  FTDDVS_ERR_INVALID_ARGUMENT = 1,
  FTDDVS_ERR_IO = 2,
  FTDDVS_ERR_NUMERICAL = 3,
  FTDDVS_ERR_INTERNAL = 4
} ftddvs_status;

typedef struct ftddvs_config ftddvs_config;
typedef struct ftddvs_model ftddvs_model;

const char* ftddvs_status_string(ftddvs_status status);
/* Message of the most recent failure on this thread (empty if none). */
const char* ftddvs_last_error(void);

/* --- configuration ----------------------------------------------------- */

/* Presets: "heat", "rd1", "rd2" (published settings per problem). */
ftddvs_status ftddvs_config_create(const char* preset_name, ftddvs_config** out);
ftddvs_status ftddvs_config_load(const char* path, ftddvs_config** out);
ftddvs_status ftddvs_config_save(const ftddvs_config* cfg, const char* path);
/* Dotted keys, e.g. "mesh.nx", "caps.n_gamma", "eval.samples". */
ftddvs_status ftddvs_config_set(ftddvs_config* cfg, const char* key,
                                const char* value);
ftddvs_status ftddvs_config_get(const ftddvs_config* cfg, const char* key,
                                char* buffer, size_t buffer_size);
void ftddvs_config_destroy(ftddvs_config* cfg);

/* --- pipeline ----------------------------------------------------------- */

/* Offline training; writes the model artifact to artifact_path. */
ftddvs_status ftddvs_offline(const ftddvs_config* cfg, const char* artifact_path);

/* Online evaluation over fresh samples with FEM-BE references; writes
 * samples.csv, error_vs_time.csv, field_t_final.csv, timing.csv and
 * summary.json into out_dir. */
ftddvs_status ftddvs_online(const ftddvs_config* cfg, const char* artifact_path,
                            const char* out_dir);

/* FEM-BE reference trajectory export (probe values over time). */
ftddvs_status ftddvs_reference(const ftddvs_config* cfg, const char* out_dir);

/* Error-decay sweep over a term count: quantity is one of
 * "n_s", "n_f", "n_gamma", "n_i". */
ftddvs_status ftddvs_sweep(const ftddvs_config* cfg, const char* quantity,
                           int n_min, int n_max, const char* out_dir);

/* Tables and SVG plots from one or more online output directories. */
ftddvs_status ftddvs_report(const char* const* run_dirs, size_t n_dirs,
                            const char* out_dir);

/* --- trained-model evaluation ------------------------------------------ */

ftddvs_status ftddvs_model_load(const char* artifact_path, ftddvs_model** out);
void ftddvs_model_destroy(ftddvs_model* model);

/* n_free: spatial dofs; n_interface: interface dofs; xi_dim: parameter
 * dimension; n_omega: frequency nodes. Null outputs are skipped. */
ftddvs_status ftddvs_model_dims(const ftddvs_model* model, int* n_free,
                                int* n_interface, int* xi_dim, int* n_omega);

/* Frequency-domain ROM field at mu = (omega, xi); re/im must hold n_free
 * entries each. */
ftddvs_status ftddvs_model_evaluate_hat(const ftddvs_model* model, double omega,
                                        const double* xi, size_t xi_len,
                                        double* re, double* im);

/* Time-domain reconstruction u(., t) by the LGL inverse transform; out must
 * hold n_free entries. */
ftddvs_status ftddvs_model_evaluate_time(const ftddvs_model* model,
                                         const double* xi, size_t xi_len,
                                         double t, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FTDDVS_H */
