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

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "core/scenario.hpp"

namespace mmwsim::scenario {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const char* kind_name(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::UplinkMu: return "uplink_mu";
    case ScenarioKind::BudgetBench: return "budget_bench";
    case ScenarioKind::SweepOnly: return "sweep_only";
  }
  return "unknown";
}

ScenarioKind kind_from_name(const std::string& name) {
  if (name == "uplink_mu") return ScenarioKind::UplinkMu;
  if (name == "budget_bench") return ScenarioKind::BudgetBench;
  if (name == "sweep_only") return ScenarioKind::SweepOnly;
  throw ConfigError("kind: unknown scenario kind '" + name +
                    "' (expected uplink_mu, budget_bench or sweep_only)");
}

namespace {

// Readers that reject unknown keys and name the offending field on type or
// range problems.

void reject_unknown(const json& obj, const std::string& section,
                    std::initializer_list<const char*> known) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      const std::string where = section.empty() ? item.key() : section + "." + item.key();
      throw ConfigError("unknown config key '" + where + "'");
    }
  }
}

template <typename T>
void read_field(const json& obj, const std::string& section, const char* key, T& value) {
  if (!obj.contains(key)) return;
  const std::string where = section.empty() ? key : section + "." + key;
  try {
    value = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config field '" + where + "' has the wrong type");
  }
}

void read_vec3(const json& obj, const std::string& section, const char* key,
               std::array<double, 3>& value) {
  if (!obj.contains(key)) return;
  const std::string where = section + "." + key;
  const auto& v = obj.at(key);
  if (!v.is_array() || v.size() != 3)
    throw ConfigError("config field '" + where + "' must be a 3-element array");
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number()) throw ConfigError("config field '" + where + "' must be numeric");
    value[i] = v[i].get<double>();
  }
}

void parse_system(const json& j, SystemConfig& c) {
  reject_unknown(j, "system",
                 {"carrier_frequency_hz", "intermediate_frequency_hz", "sampling_rate_hz",
                  "signal_bandwidth_hz", "fft_size", "num_antennas", "num_trx_chains"});
  read_field(j, "system", "carrier_frequency_hz", c.carrier_frequency_hz);
  read_field(j, "system", "intermediate_frequency_hz", c.intermediate_frequency_hz);
  read_field(j, "system", "sampling_rate_hz", c.sampling_rate_hz);
  read_field(j, "system", "signal_bandwidth_hz", c.signal_bandwidth_hz);
  read_field(j, "system", "fft_size", c.fft_size);
  read_field(j, "system", "num_antennas", c.num_antennas);
  read_field(j, "system", "num_trx_chains", c.num_trx_chains);
}

void parse_array(const json& j, ArrayConfig& c) {
  reject_unknown(j, "array",
                 {"design_wavelength_m", "element_spacing_m", "subarray_spacing_m",
                  "element_pattern_exponent", "element_peak_gain_dbi"});
  read_field(j, "array", "design_wavelength_m", c.design_wavelength_m);
  read_field(j, "array", "element_spacing_m", c.element_spacing_m);
  read_field(j, "array", "subarray_spacing_m", c.subarray_spacing_m);
  read_field(j, "array", "element_pattern_exponent", c.element_pattern_exponent);
  read_field(j, "array", "element_peak_gain_dbi", c.element_peak_gain_dbi);
}

void parse_pa(const json& j, PaConfig& c) {
  reject_unknown(j, "chain.pa", {"enabled", "small_signal_gain_db", "p1db_output_dbm", "rapp_smoothness"});
  read_field(j, "chain.pa", "enabled", c.enabled);
  read_field(j, "chain.pa", "small_signal_gain_db", c.small_signal_gain_db);
  read_field(j, "chain.pa", "p1db_output_dbm", c.p1db_output_dbm);
  read_field(j, "chain.pa", "rapp_smoothness", c.rapp_smoothness);
}

void parse_switch(const json& j, SwitchConfig& c) {
  reject_unknown(j, "chain.switch", {"spdt_isolation_db", "sp4t_isolation_db", "insertion_loss_db"});
  read_field(j, "chain.switch", "spdt_isolation_db", c.spdt_isolation_db);
  read_field(j, "chain.switch", "sp4t_isolation_db", c.sp4t_isolation_db);
  read_field(j, "chain.switch", "insertion_loss_db", c.insertion_loss_db);
}

void parse_chain(const json& j, ChainConfig& c) {
  reject_unknown(j, "chain",
                 {"frecon_tx_gain_db", "fem_tx_gain_db", "tx_interconnect_loss_db",
                  "frecon_rx_gain_db", "fem_rx_gain_db", "rx_interconnect_loss_db",
                  "noise_figure_db", "noise_bandwidth_hz", "noise_enabled", "pa", "switch"});
  read_field(j, "chain", "frecon_tx_gain_db", c.frecon_tx_gain_db);
  read_field(j, "chain", "fem_tx_gain_db", c.fem_tx_gain_db);
  read_field(j, "chain", "tx_interconnect_loss_db", c.tx_interconnect_loss_db);
  read_field(j, "chain", "frecon_rx_gain_db", c.frecon_rx_gain_db);
  read_field(j, "chain", "fem_rx_gain_db", c.fem_rx_gain_db);
  read_field(j, "chain", "rx_interconnect_loss_db", c.rx_interconnect_loss_db);
  read_field(j, "chain", "noise_figure_db", c.noise_figure_db);
  read_field(j, "chain", "noise_bandwidth_hz", c.noise_bandwidth_hz);
  read_field(j, "chain", "noise_enabled", c.noise_enabled);
  if (j.contains("pa")) parse_pa(j.at("pa"), c.pa);
  if (j.contains("switch")) parse_switch(j.at("switch"), c.sw);
}

void parse_clusters(const json& j, channel::ClusterSpec& c) {
  reject_unknown(j, "channel.clusters",
                 {"count", "mean_gain_db", "gain_sigma_db", "angle_spread_deg",
                  "max_excess_delay_ns"});
  read_field(j, "channel.clusters", "count", c.count);
  read_field(j, "channel.clusters", "mean_gain_db", c.mean_gain_db);
  read_field(j, "channel.clusters", "gain_sigma_db", c.gain_sigma_db);
  read_field(j, "channel.clusters", "angle_spread_deg", c.angle_spread_deg);
  read_field(j, "channel.clusters", "max_excess_delay_ns", c.max_excess_delay_ns);
}

void parse_channel(const json& j, ChannelConfig& c) {
  reject_unknown(j, "channel", {"ue_positions_m", "bs_position_m", "bs_yaw_deg", "clusters"});
  if (j.contains("ue_positions_m")) {
    const auto& v = j.at("ue_positions_m");
    if (!v.is_array()) throw ConfigError("config field 'channel.ue_positions_m' must be an array");
    c.ue_positions_m.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_array() || v[i].size() != 3)
        throw ConfigError("config field 'channel.ue_positions_m' entries must be [x, y, z]");
      c.ue_positions_m.push_back({v[i][0].get<double>(), v[i][1].get<double>(), v[i][2].get<double>()});
    }
  }
  read_vec3(j, "channel", "bs_position_m", c.bs_position_m);
  read_field(j, "channel", "bs_yaw_deg", c.bs_yaw_deg);
  if (j.contains("clusters")) parse_clusters(j.at("clusters"), c.clusters);
}

void parse_phy(const json& j, PhyConfig& c) {
  reject_unknown(j, "phy",
                 {"used_subcarriers", "cp_length", "num_ues", "ue_constellations",
                  "data_symbols_per_slot", "pilot_symbol_index", "ue_tx_power_dbm",
                  "ue_pa_enabled", "snr_override_db"});
  read_field(j, "phy", "used_subcarriers", c.used_subcarriers);
  read_field(j, "phy", "cp_length", c.cp_length);
  read_field(j, "phy", "num_ues", c.num_ues);
  read_field(j, "phy", "ue_constellations", c.ue_constellations);
  read_field(j, "phy", "data_symbols_per_slot", c.data_symbols_per_slot);
  read_field(j, "phy", "pilot_symbol_index", c.pilot_symbol_index);
  read_field(j, "phy", "ue_tx_power_dbm", c.ue_tx_power_dbm);
  read_field(j, "phy", "ue_pa_enabled", c.ue_pa_enabled);
  if (j.contains("snr_override_db")) {
    const auto& v = j.at("snr_override_db");
    if (v.is_null())
      c.snr_override_db.reset();
    else if (v.is_number())
      c.snr_override_db = v.get<double>();
    else
      throw ConfigError("config field 'phy.snr_override_db' must be a number or null");
  }
}

void parse_beam(const json& j, BeamConfig& c) {
  reject_unknown(j, "beam", {"slots_per_frame", "sweep_period_frames", "sweep_noise_enabled"});
  read_field(j, "beam", "slots_per_frame", c.slots_per_frame);
  read_field(j, "beam", "sweep_period_frames", c.sweep_period_frames);
  read_field(j, "beam", "sweep_noise_enabled", c.sweep_noise_enabled);
}

void parse_budget(const json& j, BudgetConfig& c) {
  reject_unknown(j, "budget",
                 {"distances_m", "tx_power_dbm", "tx_cable_loss_db", "rx_cable_loss_db",
                  "tx_antenna_gain_dbi", "rx_antenna_gain_dbi", "pa_enabled", "reference_pl_m_db"});
  read_field(j, "budget", "distances_m", c.distances_m);
  read_field(j, "budget", "tx_power_dbm", c.tx_power_dbm);
  read_field(j, "budget", "tx_cable_loss_db", c.tx_cable_loss_db);
  read_field(j, "budget", "rx_cable_loss_db", c.rx_cable_loss_db);
  read_field(j, "budget", "tx_antenna_gain_dbi", c.tx_antenna_gain_dbi);
  read_field(j, "budget", "rx_antenna_gain_dbi", c.rx_antenna_gain_dbi);
  read_field(j, "budget", "pa_enabled", c.pa_enabled);
  read_field(j, "budget", "reference_pl_m_db", c.reference_pl_m_db);
}

void parse_output(const json& j, OutputConfig& c) {
  reject_unknown(j, "output", {"directory", "format"});
  read_field(j, "output", "directory", c.directory);
  read_field(j, "output", "format", c.format);
}

std::pair<int, int> line_and_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError("config parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  reject_unknown(j, "",
                 {"kind", "seed", "system", "array", "chain", "channel", "phy", "beam", "budget",
                  "output"});
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw ConfigError("config field 'kind' is required (uplink_mu, budget_bench or sweep_only)");

  ScenarioConfig c;
  c.kind = kind_from_name(j.at("kind").get<std::string>());
  read_field(j, "", "seed", c.seed);
  if (j.contains("system")) parse_system(j.at("system"), c.system);
  if (j.contains("array")) parse_array(j.at("array"), c.array_cfg);
  if (j.contains("chain")) parse_chain(j.at("chain"), c.chain);
  if (j.contains("channel")) parse_channel(j.at("channel"), c.channel_cfg);
  if (j.contains("phy")) parse_phy(j.at("phy"), c.phy_cfg);
  if (j.contains("beam")) parse_beam(j.at("beam"), c.beam);
  if (j.contains("budget")) parse_budget(j.at("budget"), c.budget_cfg);
  if (j.contains("output")) parse_output(j.at("output"), c.output);

  c.validate();
  return c;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

void ScenarioConfig::validate() const {
  if (system.carrier_frequency_hz <= 0.0) throw ConfigError("system.carrier_frequency_hz must be positive");
  if (system.sampling_rate_hz <= 0.0) throw ConfigError("system.sampling_rate_hz must be positive");
  if (system.signal_bandwidth_hz <= 0.0) throw ConfigError("system.signal_bandwidth_hz must be positive");
  if (system.num_antennas != array::kNumElements)
    throw ConfigError("system.num_antennas must be 64 (16 subarrays of 4 elements)");
  if (system.num_trx_chains != array::kNumSubarrays)
    throw ConfigError("system.num_trx_chains must be 16 (one chain per subarray)");

  if (array_cfg.design_wavelength_m <= 0.0 || array_cfg.element_spacing_m <= 0.0 ||
      array_cfg.subarray_spacing_m <= 0.0)
    throw ConfigError("array: spacings and design wavelength must be positive");
  if (array_cfg.element_pattern_exponent < 0.0)
    throw ConfigError("array.element_pattern_exponent must be non-negative");

  if (chain.tx_interconnect_loss_db < 0.0 || chain.rx_interconnect_loss_db < 0.0)
    throw ConfigError("chain: interconnect losses must be non-negative");
  if (chain.noise_bandwidth_hz <= 0.0) throw ConfigError("chain.noise_bandwidth_hz must be positive");
  if (chain.pa.rapp_smoothness <= 0.0) throw ConfigError("chain.pa.rapp_smoothness must be positive");
  if (chain.sw.spdt_isolation_db <= 0.0 || chain.sw.sp4t_isolation_db <= 0.0)
    throw ConfigError("chain.switch: isolations must be positive");
  if (chain.sw.insertion_loss_db < 0.0)
    throw ConfigError("chain.switch.insertion_loss_db must be non-negative");

  if (phy_cfg.num_ues < 1) throw ConfigError("phy.num_ues must be at least 1");
  if (phy_cfg.num_ues > channel::kMaxUes)
    throw ConfigError("phy.num_ues exceeds the supported maximum of 12 UEs");
  if (phy_cfg.data_symbols_per_slot < 1) throw ConfigError("phy.data_symbols_per_slot must be at least 1");
  if (phy_cfg.pilot_symbol_index != 0)
    throw ConfigError("phy.pilot_symbol_index: only a leading pilot symbol is supported");

  // full OFDM shape checks
  try {
    ofdm().validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("phy: ") + e.what());
  }
  const double occupied_hz =
      phy_cfg.used_subcarriers * system.sampling_rate_hz / system.fft_size;
  if (occupied_hz > system.signal_bandwidth_hz)
    throw ConfigError("phy.used_subcarriers: occupied bandwidth exceeds system.signal_bandwidth_hz");

  if (kind != ScenarioKind::BudgetBench) {
    if (channel_cfg.ue_positions_m.size() != static_cast<std::size_t>(phy_cfg.num_ues))
      throw ConfigError("channel.ue_positions_m must list one position per UE (phy.num_ues)");
    if (phy_cfg.ue_constellations.size() != static_cast<std::size_t>(phy_cfg.num_ues))
      throw ConfigError("phy.ue_constellations must list one constellation per UE");
    for (const auto& name : phy_cfg.ue_constellations) {
      try {
        phy::constellation_from_name(name);
      } catch (const std::exception& e) {
        throw ConfigError(std::string("phy.ue_constellations: ") + e.what());
      }
    }
    for (const auto& p : channel_cfg.ue_positions_m) {
      const double dx = p[0] - channel_cfg.bs_position_m[0];
      const double dy = p[1] - channel_cfg.bs_position_m[1];
      const double dz = p[2] - channel_cfg.bs_position_m[2];
      if (dx * dx + dy * dy + dz * dz <= 0.0)
        throw ConfigError("channel.ue_positions_m: UE coincides with the BS position");
    }
  }
  if (channel_cfg.clusters.count < 0) throw ConfigError("channel.clusters.count must be non-negative");
  if (channel_cfg.clusters.angle_spread_deg < 0.0)
    throw ConfigError("channel.clusters.angle_spread_deg must be non-negative");
  if (channel_cfg.clusters.max_excess_delay_ns < 0.0)
    throw ConfigError("channel.clusters.max_excess_delay_ns must be non-negative");

  if (beam.slots_per_frame < 4) throw ConfigError("beam.slots_per_frame must be at least 4");
  if (beam.sweep_period_frames < 1) throw ConfigError("beam.sweep_period_frames must be at least 1");

  for (double d : budget_cfg.distances_m)
    if (d <= 0.0) throw ConfigError("budget.distances_m entries must be positive");
  if (budget_cfg.tx_cable_loss_db < 0.0 || budget_cfg.rx_cable_loss_db < 0.0)
    throw ConfigError("budget: cable losses must be non-negative");
  if (budget_cfg.reference_pl_m_db.size() > budget_cfg.distances_m.size())
    throw ConfigError("budget.reference_pl_m_db has more entries than budget.distances_m");

  if (output.format != "csv" && output.format != "json")
    throw ConfigError("output.format must be 'csv' or 'json'");
}

std::string ScenarioConfig::to_json_text() const {
  ordered_json j;
  j["kind"] = kind_name(kind);
  j["seed"] = seed;
  j["system"] = {{"carrier_frequency_hz", system.carrier_frequency_hz},
                 {"intermediate_frequency_hz", system.intermediate_frequency_hz},
                 {"sampling_rate_hz", system.sampling_rate_hz},
                 {"signal_bandwidth_hz", system.signal_bandwidth_hz},
                 {"fft_size", system.fft_size},
                 {"num_antennas", system.num_antennas},
                 {"num_trx_chains", system.num_trx_chains}};
  j["array"] = {{"design_wavelength_m", array_cfg.design_wavelength_m},
                {"element_spacing_m", array_cfg.element_spacing_m},
                {"subarray_spacing_m", array_cfg.subarray_spacing_m},
                {"element_pattern_exponent", array_cfg.element_pattern_exponent},
                {"element_peak_gain_dbi", array_cfg.element_peak_gain_dbi}};
  j["chain"] = {{"frecon_tx_gain_db", chain.frecon_tx_gain_db},
                {"fem_tx_gain_db", chain.fem_tx_gain_db},
                {"tx_interconnect_loss_db", chain.tx_interconnect_loss_db},
                {"frecon_rx_gain_db", chain.frecon_rx_gain_db},
                {"fem_rx_gain_db", chain.fem_rx_gain_db},
                {"rx_interconnect_loss_db", chain.rx_interconnect_loss_db},
                {"noise_figure_db", chain.noise_figure_db},
                {"noise_bandwidth_hz", chain.noise_bandwidth_hz},
                {"noise_enabled", chain.noise_enabled},
                {"pa",
                 {{"enabled", chain.pa.enabled},
                  {"small_signal_gain_db", chain.pa.small_signal_gain_db},
                  {"p1db_output_dbm", chain.pa.p1db_output_dbm},
                  {"rapp_smoothness", chain.pa.rapp_smoothness}}},
                {"switch",
                 {{"spdt_isolation_db", chain.sw.spdt_isolation_db},
                  {"sp4t_isolation_db", chain.sw.sp4t_isolation_db},
                  {"insertion_loss_db", chain.sw.insertion_loss_db}}}};
  ordered_json positions = ordered_json::array();
  for (const auto& p : channel_cfg.ue_positions_m) positions.push_back({p[0], p[1], p[2]});
  j["channel"] = {{"ue_positions_m", positions},
                  {"bs_position_m",
                   {channel_cfg.bs_position_m[0], channel_cfg.bs_position_m[1],
                    channel_cfg.bs_position_m[2]}},
                  {"bs_yaw_deg", channel_cfg.bs_yaw_deg},
                  {"clusters",
                   {{"count", channel_cfg.clusters.count},
                    {"mean_gain_db", channel_cfg.clusters.mean_gain_db},
                    {"gain_sigma_db", channel_cfg.clusters.gain_sigma_db},
                    {"angle_spread_deg", channel_cfg.clusters.angle_spread_deg},
                    {"max_excess_delay_ns", channel_cfg.clusters.max_excess_delay_ns}}}};
  j["phy"] = {{"used_subcarriers", phy_cfg.used_subcarriers},
              {"cp_length", phy_cfg.cp_length},
              {"num_ues", phy_cfg.num_ues},
              {"ue_constellations", phy_cfg.ue_constellations},
              {"data_symbols_per_slot", phy_cfg.data_symbols_per_slot},
              {"pilot_symbol_index", phy_cfg.pilot_symbol_index},
              {"ue_tx_power_dbm", phy_cfg.ue_tx_power_dbm},
              {"ue_pa_enabled", phy_cfg.ue_pa_enabled},
              {"snr_override_db",
               phy_cfg.snr_override_db ? ordered_json(*phy_cfg.snr_override_db)
                                       : ordered_json(nullptr)}};
  j["beam"] = {{"slots_per_frame", beam.slots_per_frame},
               {"sweep_period_frames", beam.sweep_period_frames},
               {"sweep_noise_enabled", beam.sweep_noise_enabled}};
  j["budget"] = {{"distances_m", budget_cfg.distances_m},
                 {"tx_power_dbm", budget_cfg.tx_power_dbm},
                 {"tx_cable_loss_db", budget_cfg.tx_cable_loss_db},
                 {"rx_cable_loss_db", budget_cfg.rx_cable_loss_db},
                 {"tx_antenna_gain_dbi", budget_cfg.tx_antenna_gain_dbi},
                 {"rx_antenna_gain_dbi", budget_cfg.rx_antenna_gain_dbi},
                 {"pa_enabled", budget_cfg.pa_enabled},
                 {"reference_pl_m_db", budget_cfg.reference_pl_m_db}};
  j["output"] = {{"directory", output.directory}, {"format", output.format}};
  return j.dump(2) + "\n";
}

std::string ScenarioConfig::hash_hex() const {
  ScenarioConfig c = *this;
  c.seed = 0;
  const std::uint64_t h = fnv1a64(c.to_json_text());
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 0; i < 16; ++i) s[15 - i] = digits[(h >> (4 * i)) & 0xF];
  return s;
}

std::string default_config_json() { return ScenarioConfig{}.to_json_text(); }

phy::OfdmConfig ScenarioConfig::ofdm() const {
  phy::OfdmConfig c;
  c.fft_size = system.fft_size;
  c.sampling_rate_hz = system.sampling_rate_hz;
  c.used_subcarriers = phy_cfg.used_subcarriers;
  c.cp_length = phy_cfg.cp_length;
  c.num_ues = phy_cfg.num_ues;
  return c;
}

array::ArrayGeometry ScenarioConfig::geometry() const {
  return array::ArrayGeometry::make(array_cfg.design_wavelength_m, array_cfg.element_spacing_m,
                                    array_cfg.subarray_spacing_m);
}

array::ElementPattern ScenarioConfig::element_pattern() const {
  return {array_cfg.element_peak_gain_dbi, array_cfg.element_pattern_exponent};
}

rf::RfChainConfig ScenarioConfig::rf_chain() const {
  rf::RfChainConfig c;
  c.frecon_tx_gain_db = chain.frecon_tx_gain_db;
  c.frecon_rx_gain_db = chain.frecon_rx_gain_db;
  c.fem_tx_gain_db = chain.fem_tx_gain_db;
  c.fem_rx_gain_db = chain.fem_rx_gain_db;
  c.tx_interconnect_loss_db = chain.tx_interconnect_loss_db;
  c.rx_interconnect_loss_db = chain.rx_interconnect_loss_db;
  c.noise_figure_db = chain.noise_figure_db;
  c.noise_bandwidth_hz = chain.noise_bandwidth_hz;
  c.noise_enabled = chain.noise_enabled;
  return c;
}

rf::PaModel ScenarioConfig::pa_model() const {
  return rf::PaModel::from_p1db(chain.pa.small_signal_gain_db, chain.pa.p1db_output_dbm,
                                chain.pa.rapp_smoothness);
}

rf::SwitchModel ScenarioConfig::switch_model() const {
  return {chain.sw.spdt_isolation_db, chain.sw.sp4t_isolation_db, chain.sw.insertion_loss_db};
}

channel::ChannelScenario ScenarioConfig::channel_scenario() const {
  channel::ChannelScenario s;
  s.carrier_frequency_hz = system.carrier_frequency_hz;
  for (const auto& p : channel_cfg.ue_positions_m) s.ue_positions_m.push_back({p[0], p[1], p[2]});
  s.bs_position_m = {channel_cfg.bs_position_m[0], channel_cfg.bs_position_m[1],
                     channel_cfg.bs_position_m[2]};
  s.bs_yaw_deg = channel_cfg.bs_yaw_deg;
  s.clusters = channel_cfg.clusters;
  s.seed = seed;
  return s;
}

}  // namespace mmwsim::scenario
