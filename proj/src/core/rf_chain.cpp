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

#include "core/rf_chain.hpp"

#include <cmath>
#include <stdexcept>

#include "core/rng.hpp"

namespace mmwsim::rf {

double cascade_tx_gain_db(const RfChainConfig& c) {
  return c.frecon_tx_gain_db + c.fem_tx_gain_db - c.tx_interconnect_loss_db;
}

double cascade_rx_gain_db(const RfChainConfig& c) {
  return c.frecon_rx_gain_db + c.fem_rx_gain_db - c.rx_interconnect_loss_db;
}

// At the 1 dB compression point the Rapp denominator equals 10^(1/20):
//   (g*a/A)^(2p) = 10^(p/10) - 1
// so the output there is A * (10^(p/10) - 1)^(1/(2p)) * 10^(-1/20).
PaModel PaModel::from_p1db(double small_signal_gain_db, double p1db_output_dbm, double smoothness) {
  if (smoothness <= 0.0) throw std::invalid_argument("PaModel: smoothness must be positive");
  const double ratio = std::pow(std::pow(10.0, smoothness / 10.0) - 1.0, 1.0 / (2.0 * smoothness));
  const double sat_offset_db = -amplitude_to_db(ratio) + 1.0;
  PaModel m;
  m.small_signal_gain_db = small_signal_gain_db;
  m.output_saturation_dbm = p1db_output_dbm + sat_offset_db;
  m.smoothness = smoothness;
  return m;
}

double PaModel::p1db_output_dbm() const {
  const double ratio = std::pow(std::pow(10.0, smoothness / 10.0) - 1.0, 1.0 / (2.0 * smoothness));
  return output_saturation_dbm + amplitude_to_db(ratio) - 1.0;
}

std::vector<cplx> apply_pa(std::span<const cplx> samples, const PaModel& model) {
  const double g = db_to_amplitude(model.small_signal_gain_db);
  const double a_sat = db_to_amplitude(model.output_saturation_dbm);
  const double two_p = 2.0 * model.smoothness;

  std::vector<cplx> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    const double drive = g * std::abs(s) / a_sat;
    const double scale = g / std::pow(1.0 + std::pow(drive, two_p), 1.0 / two_p);
    out.push_back(s * scale);
  }
  return out;
}

std::vector<cplx> apply_switch(std::span<const cplx> selected,
                               std::span<const std::vector<cplx>> leaking,
                               const SwitchModel& model, SwitchKind kind) {
  for (const auto& path : leaking)
    if (path.size() != selected.size())
      throw std::invalid_argument("apply_switch: path length mismatch");

  const double through = db_to_amplitude(-model.insertion_loss_db);
  const double leak = db_to_amplitude(-model.isolation_db(kind));

  std::vector<cplx> out(selected.begin(), selected.end());
  for (auto& s : out) s *= through;
  for (const auto& path : leaking)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += path[i] * leak;
  return out;
}

double noise_power_dbm(const RfChainConfig& config) {
  if (config.noise_bandwidth_hz <= 0.0)
    throw std::invalid_argument("noise_power_dbm: bandwidth must be positive");
  return kThermalNoiseDbmHz + lin_to_db(config.noise_bandwidth_hz) + config.noise_figure_db;
}

std::vector<cplx> add_rx_noise(std::span<const cplx> samples, const RfChainConfig& config,
                               std::uint64_t seed) {
  std::vector<cplx> out(samples.begin(), samples.end());
  if (!config.noise_enabled) return out;

  const double variance = db_to_lin(noise_power_dbm(config));
  Rng rng(seed);
  for (auto& s : out) s += rng.complex_normal(variance);
  return out;
}

}  // namespace mmwsim::rf
