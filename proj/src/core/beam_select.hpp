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

#ifndef MMWSIM_BEAM_SELECT_HPP
#define MMWSIM_BEAM_SELECT_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "core/channel_model.hpp"
#include "core/ofdm_phy.hpp"
#include "core/rf_chain.hpp"

namespace mmwsim::beams {

/// Swept channel energy per subarray and beam: sum over UEs and their pilot
/// subcarriers of |estimated channel|^2.
struct SweepResult {
  std::array<std::array<double, array::kNumBeams>, array::kNumSubarrays> magnitude{};
};

struct BeamSelection {
  std::array<int, array::kNumSubarrays> beam{};
};

enum class TddState { Rx, Tx };

/// GPIO control word. Layout (bit 0 = LSB):
///   bits 0..31   beam selection, 2 bits per subarray, subarray 0 lowest
///   bits 32..33  TDD pattern: 01 = Rx, 10 = Tx (00 and 11 are invalid)
struct ControlWord {
  std::uint64_t word = 0;
};

/// Four sweep phases: beam b is applied on every subarray, the UEs send one
/// pilot symbol, the estimator runs, and |h|^2 accumulates per subarray.
/// Noise (when enabled in `chain`) is drawn from the seed's sweep stream.
SweepResult run_beam_sweep(const channel::ChannelRealization& realization,
                           const std::array<array::BeamWeights, 4>& weights,
                           const array::ArrayGeometry& geometry, const phy::OfdmConfig& phy_config,
                           const phy::PilotPlan& plan, const rf::RfChainConfig& chain,
                           std::uint64_t seed);

/// Per-subarray argmax over the four beams; ties break toward the lowest index.
BeamSelection select_beams(const SweepResult& sweep);

ControlWord encode_control_word(const BeamSelection& selection, TddState state);
std::pair<BeamSelection, TddState> decode_control_word(const ControlWord& word);
std::string control_word_hex(const ControlWord& word);

enum class SlotKind { Sweep, Rx, Tx };

struct TddSchedule {
  int slots_per_frame = 10;
  int sweep_period_frames = 1;  // sweep every Nth frame

  int period_slots() const { return slots_per_frame * sweep_period_frames; }
};

/// Periodic schedule: the first 4 slots of each sweeping frame are sweep
/// slots (one per beam); all other slots alternate UL-Rx / DL-Tx. Positions
/// beyond one period wrap around.
SlotKind tdd_schedule_step(long position, const TddSchedule& schedule);

}  // namespace mmwsim::beams

#endif  // MMWSIM_BEAM_SELECT_HPP
