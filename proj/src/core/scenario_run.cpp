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

#include <cmath>

#include "core/format.hpp"
#include "core/rng.hpp"
#include "core/scenario.hpp"

namespace mmwsim::scenario {

namespace {

RunResult make_result_shell(const ScenarioConfig& config) {
  RunResult r;
  r.kind = kind_name(config.kind);
  r.seed = config.seed;
  r.config_hash = config.hash_hex();
  r.snr_mode = "n/a";
  return r;
}

void store_sweep(RunResult& r, const beams::SweepResult& sweep, const beams::BeamSelection& sel) {
  r.selected_beams.assign(sel.beam.begin(), sel.beam.end());
  r.sweep_magnitudes.assign(sweep.magnitude.begin(), sweep.magnitude.end());
  r.control_word = beams::control_word_hex(beams::encode_control_word(sel, beams::TddState::Rx));
}

/// Composite per-chain channel behind the SP4T: the selected butler port
/// passes with the insertion loss, the other three ports leak at the SP4T
/// isolation.
std::vector<CMat> switch_composite_channel(const channel::ChannelRealization& realization,
                                           const beams::BeamSelection& sel,
                                           const std::array<array::BeamWeights, 4>& weights,
                                           const array::ArrayGeometry& geometry,
                                           const rf::SwitchModel& sw) {
  std::array<std::vector<CMat>, array::kNumBeams> port;
  std::vector<int> all_b(array::kNumSubarrays);
  for (int b = 0; b < array::kNumBeams; ++b) {
    for (auto& s : all_b) s = b;
    port[b] = channel::effective_channel(realization, all_b, weights, geometry);
  }

  const double through = db_to_amplitude(-sw.insertion_loss_db);
  const double leak = db_to_amplitude(-sw.sp4t_isolation_db);

  const std::size_t num_sc = port[0].size();
  const std::size_t num_ues = port[0].front().cols();
  std::vector<CMat> out(num_sc, CMat(array::kNumSubarrays, num_ues));
  for (std::size_t sc = 0; sc < num_sc; ++sc) {
    for (int r = 0; r < array::kNumSubarrays; ++r) {
      for (std::size_t u = 0; u < num_ues; ++u) {
        cplx acc = through * port[sel.beam[r]][sc](r, u);
        for (int b = 0; b < array::kNumBeams; ++b)
          if (b != sel.beam[r]) acc += leak * port[b][sc](r, u);
        out[sc](r, u) = acc;
      }
    }
  }
  return out;
}

}  // namespace

RunResult run(const ScenarioConfig& config) {
  switch (config.kind) {
    case ScenarioKind::UplinkMu: return run_uplink_scenario(config);
    case ScenarioKind::BudgetBench: return run_budget_bench(config);
    case ScenarioKind::SweepOnly: return run_sweep_only(config);
  }
  throw ConfigError("unknown scenario kind");
}

RunResult run_uplink_scenario(const ScenarioConfig& config) {
  if (config.kind != ScenarioKind::UplinkMu)
    throw ConfigError("run_uplink_scenario: config kind is not uplink_mu");

  const auto geometry = config.geometry();
  const auto pattern = config.element_pattern();
  const auto ofdm = config.ofdm();
  const auto plan = phy::PilotPlan::make_default(ofdm.num_ues);
  const auto offsets = ofdm.subcarrier_offsets_hz();
  const auto weights = array::butler_set();
  const auto chain = config.rf_chain();
  const auto pa = config.pa_model();
  const auto sw = config.switch_model();

  RunResult result = make_result_shell(config);
  result.snr_mode = config.phy_cfg.snr_override_db ? "pinned" : "physical";

  auto realization =
      channel::generate_channel(config.channel_scenario(), geometry, offsets, &pattern);

  // Beam sweep and selection.
  rf::RfChainConfig sweep_chain = chain;
  sweep_chain.noise_enabled = chain.noise_enabled && config.beam.sweep_noise_enabled;
  const auto sweep =
      beams::run_beam_sweep(realization, weights, geometry, ofdm, plan, sweep_chain, config.seed);
  const auto selection = beams::select_beams(sweep);
  store_sweep(result, sweep, selection);

  const std::vector<int> sel_vec(selection.beam.begin(), selection.beam.end());
  realization.effective_h = channel::effective_channel(realization, sel_vec, weights, geometry);

  const auto h_rx = switch_composite_channel(realization, selection, weights, geometry, sw);

  // UE transmit frames: one pilot symbol followed by the data symbols.
  const int num_ues = ofdm.num_ues;
  const int data_symbols = config.phy_cfg.data_symbols_per_slot;
  const int total_symbols = data_symbols + 1;
  const int num_sc = ofdm.used_subcarriers;

  // Frequency-domain scale for the configured IF drive: mean time-domain
  // power of a fully loaded symbol equals ue_tx_power_dbm.
  const double tx_scale = std::sqrt(db_to_lin(config.phy_cfg.ue_tx_power_dbm) *
                                    static_cast<double>(ofdm.fft_size) / num_sc);

  std::vector<phy::Constellation> constellations(num_ues);
  for (int u = 0; u < num_ues; ++u)
    constellations[u] = phy::constellation_from_name(config.phy_cfg.ue_constellations[u]);

  // tx_fd[u][s][i]: frequency-domain sample of UE u, OFDM symbol s, used index i
  std::vector<std::vector<std::vector<cplx>>> tx_fd(
      num_ues, std::vector<std::vector<cplx>>(total_symbols, std::vector<cplx>(num_sc, 0.0)));
  // Unit-power reference symbols per UE and data symbol.
  std::vector<std::vector<std::vector<cplx>>> ref(
      num_ues, std::vector<std::vector<cplx>>(data_symbols));

  for (int u = 0; u < num_ues; ++u) {
    const auto pilot = phy::pilot_sequence(u, ofdm);
    for (int i = u; i < num_sc; i += plan.comb_period) tx_fd[u][0][i] = pilot[i] * tx_scale;

    Rng bits_rng = Rng::stream(config.seed, kRngTagDataBits + static_cast<std::uint64_t>(u));
    const int bps = phy::bits_per_symbol(constellations[u]);
    for (int s = 0; s < data_symbols; ++s) {
      std::vector<std::uint8_t> bits(static_cast<std::size_t>(num_sc) * bps);
      for (auto& b : bits) b = static_cast<std::uint8_t>(bits_rng.next_u64() & 1);
      ref[u][s] = phy::qam_map(bits, constellations[u]);
      for (int i = 0; i < num_sc; ++i) tx_fd[u][1 + s][i] = ref[u][s][i] * tx_scale;
    }
  }

  // UE PA acts on the time-domain waveform of each OFDM symbol.
  double ue_pa_out_dbm = 0.0;
  if (config.phy_cfg.ue_pa_enabled && config.chain.pa.enabled) {
    for (int u = 0; u < num_ues; ++u) {
      double out_power = 0.0;
      long out_count = 0;
      for (int s = 0; s < total_symbols; ++s) {
        auto t = phy::ofdm_modulate(tx_fd[u][s], ofdm);
        t = rf::apply_pa(t, pa);
        out_power += mean_power(t) * static_cast<double>(t.size());
        out_count += static_cast<long>(t.size());
        tx_fd[u][s] = phy::ofdm_demodulate(t, ofdm);
      }
      if (u == 0) ue_pa_out_dbm = lin_to_db(out_power / static_cast<double>(out_count));
    }
  }

  // Through the composite channel to the 16 chains.
  std::vector<std::vector<std::vector<cplx>>> rx_fd(
      total_symbols,
      std::vector<std::vector<cplx>>(array::kNumSubarrays, std::vector<cplx>(num_sc, 0.0)));
  double signal_power_acc = 0.0;
  long signal_count = 0;
  for (int s = 0; s < total_symbols; ++s) {
    for (int r = 0; r < array::kNumSubarrays; ++r) {
      for (int i = 0; i < num_sc; ++i) {
        cplx acc = 0.0;
        for (int u = 0; u < num_ues; ++u) acc += h_rx[i](r, u) * tx_fd[u][s][i];
        rx_fd[s][r][i] = acc;
        if (s > 0) {
          signal_power_acc += std::norm(acc);
          ++signal_count;
        }
      }
    }
  }
  const double chain_input_dbm = lin_to_db(signal_power_acc / static_cast<double>(signal_count));

  // Receiver noise at the chain input, per resource element (equivalent to
  // time-domain noise of the same power under the unitary transform).
  double noise_var = 0.0;
  if (config.phy_cfg.snr_override_db) {
    noise_var = (signal_power_acc / static_cast<double>(signal_count)) /
                db_to_lin(*config.phy_cfg.snr_override_db);
  } else if (chain.noise_enabled) {
    noise_var = db_to_lin(rf::noise_power_dbm(chain));
  }
  if (noise_var > 0.0) {
    Rng noise_rng = Rng::stream(config.seed, kRngTagDataNoise);
    for (int s = 0; s < total_symbols; ++s)
      for (int r = 0; r < array::kNumSubarrays; ++r)
        for (int i = 0; i < num_sc; ++i) rx_fd[s][r][i] += noise_rng.complex_normal(noise_var);
  }

  // Channel estimation from the pilot symbol, then per-subcarrier ZF.
  const auto est = phy::estimate_channel(rx_fd[0], plan, ofdm);

  std::vector<std::vector<cplx>> equalized(num_ues), reference(num_ues);
  result.constellations.assign(num_ues, {});
  std::vector<cplx> y(array::kNumSubarrays);
  for (int s = 0; s < data_symbols; ++s) {
    for (int i = 0; i < num_sc; ++i) {
      for (int r = 0; r < array::kNumSubarrays; ++r) y[r] = rx_fd[1 + s][r][i];
      const auto xhat = phy::zf_detect(est[i], y, i);
      for (int u = 0; u < num_ues; ++u) {
        equalized[u].push_back(xhat[u]);
        reference[u].push_back(ref[u][s][i]);
        result.constellations[u].push_back({i, s, xhat[u], ref[u][s][i]});
      }
    }
  }

  for (int u = 0; u < num_ues; ++u) {
    UeMetrics m;
    m.ue = u;
    m.constellation = config.phy_cfg.ue_constellations[u];
    m.num_symbols = static_cast<int>(equalized[u].size());
    m.evm_percent = phy::evm_percent(equalized[u], reference[u]);
    m.ser = phy::symbol_error_rate(equalized[u], reference[u], constellations[u]);
    result.ue_metrics.push_back(m);
  }

  // Stage trace and dump artifacts.
  result.stage_trace.push_back({"ue0_if_drive", config.phy_cfg.ue_tx_power_dbm,
                                config.phy_cfg.ue_tx_power_dbm});
  if (config.phy_cfg.ue_pa_enabled && config.chain.pa.enabled)
    result.stage_trace.push_back({"ue0_pa", config.phy_cfg.ue_tx_power_dbm, ue_pa_out_dbm});
  result.stage_trace.push_back({"bs_chain_input", chain_input_dbm, chain_input_dbm});
  if (noise_var > 0.0)
    result.stage_trace.push_back({"bs_noise_floor", lin_to_db(noise_var), lin_to_db(noise_var)});
  result.stage_trace.push_back(
      {"bs_if_output", chain_input_dbm, chain_input_dbm + rf::cascade_rx_gain_db(chain)});

  result.rx_iq.resize(array::kNumSubarrays);
  for (int r = 0; r < array::kNumSubarrays; ++r) {
    for (int s = 0; s < total_symbols; ++s) {
      const auto t = phy::ofdm_modulate(rx_fd[s][r], ofdm);
      result.rx_iq[r].insert(result.rx_iq[r].end(), t.begin(), t.end());
    }
  }
  result.channel_dump = realization.full_h;
  return result;
}

RunResult run_budget_bench(const ScenarioConfig& config) {
  if (config.kind != ScenarioKind::BudgetBench)
    throw ConfigError("run_budget_bench: config kind is not budget_bench");

  const BudgetConfig& bc = config.budget_cfg;
  const auto chain = config.rf_chain();
  const double f = config.system.carrier_frequency_hz;

  RunResult result = make_result_shell(config);

  for (std::size_t di = 0; di < bc.distances_m.size(); ++di) {
    const double d = bc.distances_m[di];
    const double pl_th =
        budget::theoretical_pl_db(d, f, bc.tx_antenna_gain_dbi, bc.rx_antenna_gain_dbi);

    // Bench samples: a CW tone at the configured IF drive. The bench
    // measures port to port, so the antenna gains ride inside the path
    // term and the Eq-style antenna entries stay at zero.
    const std::string tag = "d" + fmt_fixed(d, 1) + "_";
    std::vector<cplx> tone(1024, cplx(db_to_amplitude(bc.tx_power_dbm), 0.0));
    auto stage = [&](const char* name, double gain_db) {
      const double in_dbm = mean_power_dbm(tone);
      const double amp = db_to_amplitude(gain_db);
      for (auto& s : tone) s *= amp;
      result.stage_trace.push_back({tag + name, in_dbm, mean_power_dbm(tone)});
    };

    result.stage_trace.push_back({tag + "if_input", bc.tx_power_dbm, bc.tx_power_dbm});
    stage("tx_cable", -bc.tx_cable_loss_db);
    stage("frecon_tx", chain.frecon_tx_gain_db);
    stage("tx_interconnect", -chain.tx_interconnect_loss_db);
    if (bc.pa_enabled && config.chain.pa.enabled) {
      // Compression lives in the FEM PA; its output is the chain P1dB plane.
      const auto fem_pa = rf::PaModel::from_p1db(chain.fem_tx_gain_db,
                                                 config.chain.pa.p1db_output_dbm,
                                                 config.chain.pa.rapp_smoothness);
      const double in_dbm = mean_power_dbm(tone);
      tone = rf::apply_pa(tone, fem_pa);
      result.stage_trace.push_back({tag + "fem_tx", in_dbm, mean_power_dbm(tone)});
    } else {
      stage("fem_tx", chain.fem_tx_gain_db);
    }
    stage("ota_path", -pl_th);
    stage("fem_rx", chain.fem_rx_gain_db);
    stage("rx_interconnect", -chain.rx_interconnect_loss_db);
    stage("frecon_rx", chain.frecon_rx_gain_db);
    stage("rx_cable", -bc.rx_cable_loss_db);
    const double p_rx_dbm = mean_power_dbm(tone);
    result.stage_trace.push_back({tag + "if_output", p_rx_dbm, p_rx_dbm});

    budget::LinkBudgetInput in;
    in.p_tx_dbm = bc.tx_power_dbm;
    in.g_tx_chain_db = rf::cascade_tx_gain_db(chain);
    in.l_tx_cable_db = bc.tx_cable_loss_db;
    in.g_tx_ant_dbi = 0.0;  // folded into the path
    in.p_rx_dbm = p_rx_dbm;
    in.g_rx_chain_db = rf::cascade_rx_gain_db(chain);
    in.l_rx_cable_db = bc.rx_cable_loss_db;
    in.g_rx_ant_dbi = 0.0;
    in.distance_m = d;
    in.frequency_hz = f;

    BudgetRow row;
    row.distance_m = d;
    row.eirp_dbm = budget::eirp_dbm(in);
    row.pl_theoretical_db = pl_th;
    row.pl_measured_db = budget::measured_pl_db(in);
    row.gap_db = budget::budget_gap_db(row.pl_theoretical_db, row.pl_measured_db);
    if (di < bc.reference_pl_m_db.size()) {
      row.pl_measured_ref_db = bc.reference_pl_m_db[di];
      row.gap_ref_db = budget::budget_gap_db(row.pl_theoretical_db, row.pl_measured_ref_db);
    } else {
      row.pl_measured_ref_db = std::nan("");
      row.gap_ref_db = std::nan("");
    }
    result.budget_rows.push_back(row);
  }
  return result;
}

RunResult run_sweep_only(const ScenarioConfig& config) {
  if (config.kind != ScenarioKind::SweepOnly)
    throw ConfigError("run_sweep_only: config kind is not sweep_only");

  const auto geometry = config.geometry();
  const auto pattern = config.element_pattern();
  const auto ofdm = config.ofdm();
  const auto plan = phy::PilotPlan::make_default(ofdm.num_ues);
  const auto offsets = ofdm.subcarrier_offsets_hz();
  const auto weights = array::butler_set();

  RunResult result = make_result_shell(config);

  const auto realization =
      channel::generate_channel(config.channel_scenario(), geometry, offsets, &pattern);
  rf::RfChainConfig sweep_chain = config.rf_chain();
  sweep_chain.noise_enabled = sweep_chain.noise_enabled && config.beam.sweep_noise_enabled;
  const auto sweep =
      beams::run_beam_sweep(realization, weights, geometry, ofdm, plan, sweep_chain, config.seed);
  store_sweep(result, sweep, beams::select_beams(sweep));
  result.channel_dump = realization.full_h;
  return result;
}

}  // namespace mmwsim::scenario
