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

#ifndef MMWSIM_RF_CHAIN_HPP
#define MMWSIM_RF_CHAIN_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/units.hpp"

namespace mmwsim::rf {

// One TRx chain: frequency-conversion board (FRECON) plus front-end module
// (FEM). The IF stage and mixers are treated as ideal frequency translation;
// everything here acts on complex baseband samples in sqrt(mW) units.

struct RfChainConfig {
  double frecon_tx_gain_db = 9.0;
  double frecon_rx_gain_db = 7.0;
  double fem_tx_gain_db = 14.0;
  double fem_rx_gain_db = 12.0;
  // Measured cascades include cable/connector loss between the boards; the
  // defaults reconcile the per-module and combined figures (22 / 18.8 dB).
  double tx_interconnect_loss_db = 1.0;
  double rx_interconnect_loss_db = 0.2;
  double noise_figure_db = 5.0;
  double noise_bandwidth_hz = 20e6;
  bool noise_enabled = true;
};

double cascade_tx_gain_db(const RfChainConfig& config);
double cascade_rx_gain_db(const RfChainConfig& config);

/// Rapp AM/AM power amplifier (phase preserved, no AM/PM).
struct PaModel {
  double small_signal_gain_db = 22.0;
  double output_saturation_dbm = 20.164617;  // from_p1db(22, 18, 2)
  double smoothness = 2.0;                   // Rapp p-factor

  /// Saturation calibrated so the output power at 1 dB gain compression
  /// equals p1db_output_dbm.
  static PaModel from_p1db(double small_signal_gain_db, double p1db_output_dbm, double smoothness);

  /// Output power at 1 dB gain compression implied by the model.
  double p1db_output_dbm() const;
};

/// Rapp AM/AM: out = g*a / (1 + (g*a/A_sat)^(2p))^(1/(2p)), phase untouched.
std::vector<cplx> apply_pa(std::span<const cplx> samples, const PaModel& model);

enum class SwitchKind { Spdt, Sp4t };

struct SwitchModel {
  double spdt_isolation_db = 38.0;
  double sp4t_isolation_db = 30.0;
  double insertion_loss_db = 0.0;

  double isolation_db(SwitchKind kind) const {
    return kind == SwitchKind::Spdt ? spdt_isolation_db : sp4t_isolation_db;
  }
};

/// Selected path with insertion loss plus each leaking path attenuated by
/// the switch isolation. All sequences must have equal length.
std::vector<cplx> apply_switch(std::span<const cplx> selected,
                               std::span<const std::vector<cplx>> leaking,
                               const SwitchModel& model, SwitchKind kind);

/// Thermal noise power at the chain input: -174 dBm/Hz + 10log10(BW) + NF.
double noise_power_dbm(const RfChainConfig& config);

/// Adds seeded circularly-symmetric complex Gaussian noise of that power.
/// Returns the input untouched when config.noise_enabled is false.
std::vector<cplx> add_rx_noise(std::span<const cplx> samples, const RfChainConfig& config,
                               std::uint64_t seed);

/// One row of the optional per-stage power trace.
struct StageTraceEntry {
  std::string stage;
  double input_dbm;
  double output_dbm;
};

}  // namespace mmwsim::rf

#endif  // MMWSIM_RF_CHAIN_HPP
