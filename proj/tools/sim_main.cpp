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

// `sim` command line front end. Talks to the simulator exclusively through
// the C API in mmwsim.h. Exit codes: 0 success, 2 config error, 3 runtime
// error, 4 I/O error.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "mmwsim.h"

namespace {

int exit_code(mmw_status s) {
  switch (s) {
    case MMW_OK: return 0;
    case MMW_ERR_CONFIG: return 2;
    case MMW_ERR_RUNTIME: return 3;
    case MMW_ERR_IO: return 4;
    case MMW_ERR_INVALID_ARG: return 3;
  }
  return 3;
}

int report(mmw_status s, const char* what) {
  std::fprintf(stderr, "sim: %s: %s\n", what, mmw_last_error());
  return exit_code(s);
}

struct ConfigHandle {
  mmw_config* ptr = nullptr;
  ~ConfigHandle() { mmw_config_free(ptr); }
};

struct ResultHandle {
  mmw_result* ptr = nullptr;
  ~ResultHandle() { mmw_result_free(ptr); }
};

struct StringHandle {
  char* ptr = nullptr;
  ~StringHandle() { mmw_string_free(ptr); }
};

int load_config(const std::string& path, bool has_seed, std::uint64_t seed, ConfigHandle& cfg) {
  mmw_status s = path.empty() ? mmw_config_default(&cfg.ptr) : mmw_config_load(path.c_str(), &cfg.ptr);
  if (s != MMW_OK) return report(s, "loading config");
  if (has_seed) mmw_config_set_seed(cfg.ptr, seed);
  return 0;
}

int run_and_export(const ConfigHandle& cfg, const std::string& out_dir_flag,
                   const std::string& format_flag, bool dump_iq, bool dump_channel,
                   bool print_budget) {
  ResultHandle result;
  mmw_status s = mmw_run(cfg.ptr, &result.ptr);
  if (s != MMW_OK) return report(s, "running scenario");

  std::string out_dir = out_dir_flag;
  std::string format = format_flag;
  if (out_dir.empty()) {
    StringHandle d;
    mmw_config_output_dir(cfg.ptr, &d.ptr);
    out_dir = d.ptr;
  }
  if (format.empty()) {
    StringHandle f;
    mmw_config_output_format(cfg.ptr, &f.ptr);
    format = f.ptr;
  }

  s = mmw_result_export(result.ptr, out_dir.c_str(), format.c_str(), dump_iq ? 1 : 0,
                        dump_channel ? 1 : 0);
  if (s != MMW_OK) return report(s, "exporting results");

  if (print_budget) {
    StringHandle text;
    if (mmw_result_budget_text(result.ptr, &text.ptr) == MMW_OK) std::fputs(text.ptr, stdout);
  }

  int num_ues = 0;
  mmw_result_num_ues(result.ptr, &num_ues);
  for (int u = 0; u < num_ues; ++u) {
    double evm = 0.0, ser = 0.0;
    mmw_result_ue_evm_percent(result.ptr, u, &evm);
    mmw_result_ue_ser(result.ptr, u, &ser);
    std::printf("ue %d: evm %.3f %%  ser %.6f\n", u, evm, ser);
  }

  char hash[17];
  std::uint64_t seed = 0;
  mmw_config_hash(cfg.ptr, hash);
  mmw_config_get_seed(cfg.ptr, &seed);
  std::printf("done: config %s seed %llu -> %s\n", hash, static_cast<unsigned long long>(seed),
              out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmwsim: 28 GHz hybrid-beamforming massive MIMO link-level simulator"};
  app.require_subcommand(1);

  // sim run
  auto* run_cmd = app.add_subcommand("run", "Run the scenario described by a config file");
  std::string run_config, run_out, run_format;
  std::uint64_t run_seed = 0;
  bool run_has_seed = false, run_dump_iq = false, run_dump_channel = false;
  run_cmd->add_option("--config", run_config, "Scenario config JSON")->required();
  run_cmd->add_option("--seed", run_seed, "Override the config seed")
      ->each([&](const std::string&) { run_has_seed = true; });
  run_cmd->add_option("--out", run_out, "Output directory (default: from config)");
  run_cmd->add_option("--format", run_format, "Export format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_flag("--dump-iq", run_dump_iq, "Also write received IQ samples (float32 LE)");
  run_cmd->add_flag("--dump-channel", run_dump_channel, "Also write the channel matrices");

  // sim budget
  auto* budget_cmd = app.add_subcommand("budget", "Single-chain link-budget bench (prints the table)");
  std::string budget_config, budget_out;
  std::uint64_t budget_seed = 0;
  bool budget_has_seed = false;
  budget_cmd->add_option("--config", budget_config, "Scenario config JSON (default: built-in bench)");
  budget_cmd->add_option("--seed", budget_seed, "Override the config seed")
      ->each([&](const std::string&) { budget_has_seed = true; });
  budget_cmd->add_option("--out", budget_out, "Output directory (default: from config)");

  // sim print-default-config
  app.add_subcommand("print-default-config", "Print the built-in default config JSON");

  // sim pattern
  auto* pattern_cmd = app.add_subcommand("pattern", "Export an antenna gain pattern as CSV");
  std::string pattern_config, pattern_out = "pattern.csv";
  int pattern_beam = 0;
  bool pattern_full = false;
  double pattern_step = 1.0;
  pattern_cmd->add_option("--config", pattern_config, "Scenario config JSON (default: built-in)");
  pattern_cmd->add_option("--beam", pattern_beam, "Butler beam index 0..3")->check(CLI::Range(0, 3));
  pattern_cmd->add_flag("--full", pattern_full, "Full 16-subarray pattern instead of one beam");
  pattern_cmd->add_option("--step", pattern_step, "Grid step in degrees")->check(CLI::PositiveNumber);
  pattern_cmd->add_option("--out", pattern_out, "Output CSV path");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("print-default-config")) {
    ConfigHandle cfg;
    mmw_status s = mmw_config_default(&cfg.ptr);
    if (s != MMW_OK) return report(s, "building default config");
    StringHandle json;
    s = mmw_config_to_json(cfg.ptr, &json.ptr);
    if (s != MMW_OK) return report(s, "serializing config");
    std::fputs(json.ptr, stdout);
    return 0;
  }

  if (app.got_subcommand(run_cmd)) {
    ConfigHandle cfg;
    if (int rc = load_config(run_config, run_has_seed, run_seed, cfg)) return rc;
    return run_and_export(cfg, run_out, run_format, run_dump_iq, run_dump_channel, false);
  }

  if (app.got_subcommand(budget_cmd)) {
    ConfigHandle cfg;
    if (budget_config.empty()) {
      // built-in bench: defaults with the budget scenario kind
      mmw_status s = mmw_config_parse("{\"kind\": \"budget_bench\"}", &cfg.ptr);
      if (s != MMW_OK) return report(s, "building bench config");
      if (budget_has_seed) mmw_config_set_seed(cfg.ptr, budget_seed);
    } else {
      if (int rc = load_config(budget_config, budget_has_seed, budget_seed, cfg)) return rc;
    }
    return run_and_export(cfg, budget_out, "", false, false, true);
  }

  if (app.got_subcommand(pattern_cmd)) {
    ConfigHandle cfg;
    if (int rc = load_config(pattern_config, false, 0, cfg)) return rc;
    const int beam = pattern_full ? -1 : pattern_beam;
    mmw_status s = mmw_pattern_export_csv(cfg.ptr, beam, pattern_step, pattern_out.c_str());
    if (s != MMW_OK) return report(s, "exporting pattern");
    std::printf("wrote %s\n", pattern_out.c_str());
    return 0;
  }

  return 0;
}
