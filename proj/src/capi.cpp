// SPDX-License-Identifier: Apache-2.0
//
// mmwsim - link-level simulator for a 28 GHz hybrid-beamforming massive MIMO base station
// Copyright (C) 2026 the mmwsim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mmwsim.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "core/scenario.hpp"

using namespace mmwsim;

struct mmw_config {
  scenario::ScenarioConfig cfg;
};

struct mmw_result {
  scenario::RunResult result;
};

namespace {

thread_local std::string t_last_error;

void set_error(const std::string& msg) { t_last_error = msg; }

mmw_status classify(const std::exception& e) {
  if (dynamic_cast<const scenario::ConfigError*>(&e)) return MMW_ERR_CONFIG;
  if (dynamic_cast<const scenario::IoError*>(&e)) return MMW_ERR_IO;
  return MMW_ERR_RUNTIME;
}

mmw_status fail(const std::exception& e) {
  set_error(e.what());
  return classify(e);
}

mmw_status invalid(const char* msg) {
  set_error(msg);
  return MMW_ERR_INVALID_ARG;
}

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

mmw_status return_string(const std::string& s, char** out) {
  *out = dup_string(s);
  if (!*out) {
    set_error("out of memory");
    return MMW_ERR_RUNTIME;
  }
  return MMW_OK;
}

}  // namespace

extern "C" {

const char* mmw_version(void) { return scenario::kLibraryVersion; }

const char* mmw_last_error(void) { return t_last_error.c_str(); }

void mmw_string_free(char* s) { delete[] s; }

mmw_status mmw_config_default(mmw_config** out) {
  if (!out) return invalid("mmw_config_default: null output");
  *out = new mmw_config{};
  return MMW_OK;
}

mmw_status mmw_config_load(const char* path, mmw_config** out) {
  if (!path || !out) return invalid("mmw_config_load: null argument");
  try {
    auto cfg = scenario::ScenarioConfig::load(path);
    *out = new mmw_config{std::move(cfg)};
    return MMW_OK;
  } catch (const std::exception& e) {
    *out = nullptr;
    return fail(e);
  }
}

mmw_status mmw_config_parse(const char* json_text, mmw_config** out) {
  if (!json_text || !out) return invalid("mmw_config_parse: null argument");
  try {
    auto cfg = scenario::ScenarioConfig::from_json_text(json_text);
    *out = new mmw_config{std::move(cfg)};
    return MMW_OK;
  } catch (const std::exception& e) {
    *out = nullptr;
    return fail(e);
  }
}

void mmw_config_free(mmw_config* config) { delete config; }

mmw_status mmw_config_set_seed(mmw_config* config, uint64_t seed) {
  if (!config) return invalid("mmw_config_set_seed: null config");
  config->cfg.seed = seed;
  return MMW_OK;
}

mmw_status mmw_config_get_seed(const mmw_config* config, uint64_t* out) {
  if (!config || !out) return invalid("mmw_config_get_seed: null argument");
  *out = config->cfg.seed;
  return MMW_OK;
}

mmw_status mmw_config_to_json(const mmw_config* config, char** out_json) {
  if (!config || !out_json) return invalid("mmw_config_to_json: null argument");
  return return_string(config->cfg.to_json_text(), out_json);
}

mmw_status mmw_config_hash(const mmw_config* config, char out_hex[17]) {
  if (!config || !out_hex) return invalid("mmw_config_hash: null argument");
  const std::string h = config->cfg.hash_hex();
  std::memcpy(out_hex, h.c_str(), 17);
  return MMW_OK;
}

mmw_status mmw_config_output_dir(const mmw_config* config, char** out_dir) {
  if (!config || !out_dir) return invalid("mmw_config_output_dir: null argument");
  return return_string(config->cfg.output.directory, out_dir);
}

mmw_status mmw_config_output_format(const mmw_config* config, char** out_format) {
  if (!config || !out_format) return invalid("mmw_config_output_format: null argument");
  return return_string(config->cfg.output.format, out_format);
}

mmw_status mmw_run(const mmw_config* config, mmw_result** out) {
  if (!config || !out) return invalid("mmw_run: null argument");
  try {
    auto result = scenario::run(config->cfg);
    *out = new mmw_result{std::move(result)};
    return MMW_OK;
  } catch (const std::exception& e) {
    *out = nullptr;
    return fail(e);
  }
}

void mmw_result_free(mmw_result* result) { delete result; }

mmw_status mmw_result_to_json(const mmw_result* result, char** out_json) {
  if (!result || !out_json) return invalid("mmw_result_to_json: null argument");
  return return_string(result->result.to_json_text(), out_json);
}

mmw_status mmw_result_num_ues(const mmw_result* result, int* out) {
  if (!result || !out) return invalid("mmw_result_num_ues: null argument");
  *out = static_cast<int>(result->result.ue_metrics.size());
  return MMW_OK;
}

mmw_status mmw_result_ue_evm_percent(const mmw_result* result, int ue, double* out) {
  if (!result || !out) return invalid("mmw_result_ue_evm_percent: null argument");
  if (ue < 0 || ue >= static_cast<int>(result->result.ue_metrics.size()))
    return invalid("mmw_result_ue_evm_percent: UE index out of range");
  *out = result->result.ue_metrics[ue].evm_percent;
  return MMW_OK;
}

mmw_status mmw_result_ue_ser(const mmw_result* result, int ue, double* out) {
  if (!result || !out) return invalid("mmw_result_ue_ser: null argument");
  if (ue < 0 || ue >= static_cast<int>(result->result.ue_metrics.size()))
    return invalid("mmw_result_ue_ser: UE index out of range");
  *out = result->result.ue_metrics[ue].ser;
  return MMW_OK;
}

mmw_status mmw_result_selected_beam(const mmw_result* result, int subarray, int* out) {
  if (!result || !out) return invalid("mmw_result_selected_beam: null argument");
  if (subarray < 0 || subarray >= static_cast<int>(result->result.selected_beams.size()))
    return invalid("mmw_result_selected_beam: subarray index out of range");
  *out = result->result.selected_beams[subarray];
  return MMW_OK;
}

mmw_status mmw_result_budget_rows(const mmw_result* result, int* out) {
  if (!result || !out) return invalid("mmw_result_budget_rows: null argument");
  *out = static_cast<int>(result->result.budget_rows.size());
  return MMW_OK;
}

mmw_status mmw_result_budget_row(const mmw_result* result, int row, double* distance_m,
                                 double* pl_theoretical_db, double* pl_measured_db, double* gap_db,
                                 double* pl_measured_ref_db, double* gap_ref_db) {
  if (!result) return invalid("mmw_result_budget_row: null result");
  if (row < 0 || row >= static_cast<int>(result->result.budget_rows.size()))
    return invalid("mmw_result_budget_row: row index out of range");
  const auto& b = result->result.budget_rows[row];
  if (distance_m) *distance_m = b.distance_m;
  if (pl_theoretical_db) *pl_theoretical_db = b.pl_theoretical_db;
  if (pl_measured_db) *pl_measured_db = b.pl_measured_db;
  if (gap_db) *gap_db = b.gap_db;
  if (pl_measured_ref_db) *pl_measured_ref_db = b.pl_measured_ref_db;
  if (gap_ref_db) *gap_ref_db = b.gap_ref_db;
  return MMW_OK;
}

mmw_status mmw_result_budget_text(const mmw_result* result, char** out_text) {
  if (!result || !out_text) return invalid("mmw_result_budget_text: null argument");
  return return_string(scenario::budget_report_text(result->result), out_text);
}

mmw_status mmw_result_export(const mmw_result* result, const char* out_dir, const char* format,
                             int dump_iq, int dump_channel) {
  if (!result || !out_dir || !format) return invalid("mmw_result_export: null argument");
  try {
    scenario::ExportOptions opts;
    opts.format = format;
    opts.dump_iq = dump_iq != 0;
    opts.dump_channel = dump_channel != 0;
    scenario::export_results(result->result, out_dir, opts);
    return MMW_OK;
  } catch (const std::exception& e) {
    return fail(e);
  }
}

mmw_status mmw_pattern_export_csv(const mmw_config* config, int beam_index, double grid_step_deg,
                                  const char* path) {
  if (!config || !path) return invalid("mmw_pattern_export_csv: null argument");
  if (beam_index < -1 || beam_index >= array::kNumBeams)
    return invalid("mmw_pattern_export_csv: beam index must be -1 or 0..3");
  if (grid_step_deg <= 0.0) return invalid("mmw_pattern_export_csv: grid step must be positive");
  try {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw scenario::IoError("cannot open output file '" + std::string(path) + "'");
    array::export_pattern_csv(out, config->cfg.geometry(), config->cfg.element_pattern(),
                              beam_index, grid_step_deg);
    out.flush();
    if (!out) throw scenario::IoError("write failed for '" + std::string(path) + "'");
    return MMW_OK;
  } catch (const std::exception& e) {
    return fail(e);
  }
}

}  // extern "C"
