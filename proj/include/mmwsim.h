/* SPDX-License-Identifier: Apache-2.0
 *
 * mmwsim - link-level simulator for a 28 GHz hybrid-beamforming massive MIMO base station
 * Copyright (C) 2026 the mmwsim contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C interface of the mmwsim shared library. The simulator core is C++;
 * this header exposes it behind opaque handles and status codes so the
 * CLI, scripting layers and test harnesses can link a stable ABI.
 *
 * Conventions:
 *  - Every fallible call returns mmw_status; MMW_OK is 0.
 *  - On failure, mmw_last_error() returns a thread-local message that
 *    stays valid until the next failing call on the same thread.
 *  - char** outputs are heap strings owned by the caller; release them
 *    with mmw_string_free().
 *  - Handles are released with their matching *_free() function. NULL is
 *    always safe to free.
 */

#ifndef MMWSIM_H
#define MMWSIM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mmw_status {
  MMW_OK = 0,
  MMW_ERR_INVALID_ARG = 1, /* null handle / bad index at the API boundary */
  MMW_ERR_CONFIG = 2,      /* config parse or validation problem */
  MMW_ERR_RUNTIME = 3,     /* simulation failure (e.g. singular channel) */
  MMW_ERR_IO = 4           /* filesystem problem */
} mmw_status;

typedef struct mmw_config mmw_config; /* opaque scenario configuration */
typedef struct mmw_result mmw_result; /* opaque run result */

/* Library version, e.g. "0.1.0". Static storage; do not free. */
const char* mmw_version(void);

/* Thread-local message describing the most recent failure on this thread. */
const char* mmw_last_error(void);

void mmw_string_free(char* s);

/* -------- configuration -------- */

/* Built-in defaults: the 64-antenna/16-chain uplink scenario. */
mmw_status mmw_config_default(mmw_config** out);

mmw_status mmw_config_load(const char* path, mmw_config** out);
mmw_status mmw_config_parse(const char* json_text, mmw_config** out);
void mmw_config_free(mmw_config* config);

mmw_status mmw_config_set_seed(mmw_config* config, uint64_t seed);
mmw_status mmw_config_get_seed(const mmw_config* config, uint64_t* out);

/* Canonical JSON of the (validated) configuration. */
mmw_status mmw_config_to_json(const mmw_config* config, char** out_json);

/* 16 hex chars + NUL. Stable across runs; independent of the seed. */
mmw_status mmw_config_hash(const mmw_config* config, char out_hex[17]);

/* Output settings as recorded in the config (CLI flags may override). */
mmw_status mmw_config_output_dir(const mmw_config* config, char** out_dir);
mmw_status mmw_config_output_format(const mmw_config* config, char** out_format);

/* -------- simulation -------- */

/* Runs the configured scenario (uplink_mu, budget_bench or sweep_only). */
mmw_status mmw_run(const mmw_config* config, mmw_result** out);
void mmw_result_free(mmw_result* result);

/* JSON document of the result (metrics, beams, budget, trace). */
mmw_status mmw_result_to_json(const mmw_result* result, char** out_json);

mmw_status mmw_result_num_ues(const mmw_result* result, int* out);
mmw_status mmw_result_ue_evm_percent(const mmw_result* result, int ue, double* out);
mmw_status mmw_result_ue_ser(const mmw_result* result, int ue, double* out);

/* Selected beam (0..3) of one subarray (0..15); valid after a sweep ran. */
mmw_status mmw_result_selected_beam(const mmw_result* result, int subarray, int* out);

mmw_status mmw_result_budget_rows(const mmw_result* result, int* out);
/* Reference outputs are NaN when the row carries no reference value. */
mmw_status mmw_result_budget_row(const mmw_result* result, int row, double* distance_m,
                                 double* pl_theoretical_db, double* pl_measured_db,
                                 double* gap_db, double* pl_measured_ref_db, double* gap_ref_db);

/* Aligned text table of the budget rows (0.1 dB resolution). */
mmw_status mmw_result_budget_text(const mmw_result* result, char** out_text);

/* Writes the result file set (JSON + CSVs, optional IQ / channel dumps)
 * into out_dir. format is "csv" or "json". Two exports of one result are
 * byte-identical. */
mmw_status mmw_result_export(const mmw_result* result, const char* out_dir, const char* format,
                             int dump_iq, int dump_channel);

/* -------- antenna patterns -------- */

/* CSV gain pattern over the front hemisphere using the config's array
 * parameters. beam_index 0..3 exports one butler beam; -1 exports the
 * full-array pattern (all subarrays on beam 0). */
mmw_status mmw_pattern_export_csv(const mmw_config* config, int beam_index, double grid_step_deg,
                                  const char* path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MMWSIM_H */
