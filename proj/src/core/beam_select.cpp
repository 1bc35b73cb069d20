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

#include "core/beam_select.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "core/rng.hpp"

namespace mmwsim::beams {

SweepResult run_beam_sweep(const channel::ChannelRealization& realization,
                           const std::array<array::BeamWeights, 4>& weights,
                           const array::ArrayGeometry& geometry, const phy::OfdmConfig& phy_config,
                           const phy::PilotPlan& plan, const rf::RfChainConfig& chain,
                           std::uint64_t seed) {
  plan.validate(phy_config);
  const int num_sc = phy_config.used_subcarriers;
  const int num_ues = phy_config.num_ues;
  if (realization.full_h.size() != static_cast<std::size_t>(num_sc))
    throw std::invalid_argument("run_beam_sweep: realization grid does not match the PHY config");

  std::vector<std::vector<cplx>> pilots(num_ues);
  for (int u = 0; u < num_ues; ++u) pilots[u] = phy::pilot_sequence(u, phy_config);

  Rng noise_rng = Rng::stream(seed, kRngTagSweepNoise);
  const double noise_var = chain.noise_enabled ? db_to_lin(rf::noise_power_dbm(chain)) : 0.0;

  SweepResult sweep;
  std::vector<int> selection(array::kNumSubarrays);

  for (int b = 0; b < array::kNumBeams; ++b) {
    for (auto& s : selection) s = b;
    const auto h_eff = channel::effective_channel(realization, selection, weights, geometry);

    // One pilot symbol through the beam-b effective channel. Noise is drawn
    // per resource element; a unitary transform makes this equivalent to
    // time-domain noise of the same power.
    std::vector<std::vector<cplx>> rx(array::kNumSubarrays, std::vector<cplx>(num_sc));
    for (int r = 0; r < array::kNumSubarrays; ++r) {
      for (int sc = 0; sc < num_sc; ++sc) {
        cplx acc = 0.0;
        for (int u = 0; u < num_ues; ++u) {
          const int owner = sc % plan.comb_period;
          if (owner == u) acc += h_eff[sc](r, u) * pilots[u][sc];
        }
        if (noise_var > 0.0) acc += noise_rng.complex_normal(noise_var);
        rx[r][sc] = acc;
      }
    }

    const auto est = phy::estimate_channel(rx, plan, phy_config);
    for (int u = 0; u < num_ues; ++u) {
      for (int p : plan.pilot_subcarriers(u, phy_config)) {
        for (int r = 0; r < array::kNumSubarrays; ++r)
          sweep.magnitude[r][b] += std::norm(est[p](r, u));
      }
    }
  }
  return sweep;
}

BeamSelection select_beams(const SweepResult& sweep) {
  BeamSelection sel;
  for (int r = 0; r < array::kNumSubarrays; ++r) {
    int best = 0;
    for (int b = 1; b < array::kNumBeams; ++b)
      if (sweep.magnitude[r][b] > sweep.magnitude[r][best]) best = b;
    sel.beam[r] = best;
  }
  return sel;
}

namespace {
constexpr std::uint64_t kTddRxPattern = 0x1;  // bits 32..33
constexpr std::uint64_t kTddTxPattern = 0x2;
}  // namespace

ControlWord encode_control_word(const BeamSelection& selection, TddState state) {
  std::uint64_t w = 0;
  for (int r = 0; r < array::kNumSubarrays; ++r) {
    const int b = selection.beam[r];
    if (b < 0 || b >= array::kNumBeams)
      throw std::invalid_argument("encode_control_word: beam index must be in 0..3");
    w |= static_cast<std::uint64_t>(b) << (2 * r);
  }
  w |= (state == TddState::Rx ? kTddRxPattern : kTddTxPattern) << 32;
  return ControlWord{w};
}

std::pair<BeamSelection, TddState> decode_control_word(const ControlWord& word) {
  if (word.word >> 34 != 0)
    throw std::invalid_argument("decode_control_word: unexpected bits above bit 33");
  const std::uint64_t tdd = (word.word >> 32) & 0x3;
  if (tdd != kTddRxPattern && tdd != kTddTxPattern)
    throw std::invalid_argument("decode_control_word: invalid TDD bit pattern");

  BeamSelection sel;
  for (int r = 0; r < array::kNumSubarrays; ++r)
    sel.beam[r] = static_cast<int>((word.word >> (2 * r)) & 0x3);
  return {sel, tdd == kTddRxPattern ? TddState::Rx : TddState::Tx};
}

std::string control_word_hex(const ControlWord& word) {
  static const char* digits = "0123456789abcdef";
  std::string s = "0x";
  bool started = false;
  for (int shift = 60; shift >= 0; shift -= 4) {
    const int nib = static_cast<int>((word.word >> shift) & 0xF);
    if (nib != 0 || started || shift == 0) {
      s.push_back(digits[nib]);
      started = true;
    }
  }
  return s;
}

SlotKind tdd_schedule_step(long position, const TddSchedule& schedule) {
  if (schedule.slots_per_frame < 4)
    throw std::invalid_argument("tdd schedule: a frame needs at least 4 slots for the sweep");
  if (schedule.sweep_period_frames < 1)
    throw std::invalid_argument("tdd schedule: sweep period must be at least 1 frame");
  if (position < 0) throw std::invalid_argument("tdd schedule: negative position");

  const long p = position % schedule.period_slots();
  const long frame = p / schedule.slots_per_frame;
  const long slot = p % schedule.slots_per_frame;
  if (frame % schedule.sweep_period_frames == 0 && slot < array::kNumBeams) return SlotKind::Sweep;
  return (slot % 2 == 0) ? SlotKind::Rx : SlotKind::Tx;
}

}  // namespace mmwsim::beams
