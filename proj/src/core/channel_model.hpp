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

#ifndef MMWSIM_CHANNEL_MODEL_HPP
#define MMWSIM_CHANNEL_MODEL_HPP

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "core/array_model.hpp"
#include "core/linalg.hpp"
#include "core/units.hpp"

namespace mmwsim::channel {

inline constexpr int kMaxUes = 12;

/// Simplified Saleh-Valenzuela scattering: each cluster contributes one ray
/// with Laplacian angle offsets around a seeded mean, log-normal gain
/// relative to the LOS path, and a uniform excess delay.
struct ClusterSpec {
  int count = 0;
  double mean_gain_db = -20.0;  // relative to LOS
  double gain_sigma_db = 3.0;
  double angle_spread_deg = 5.0;
  double max_excess_delay_ns = 200.0;
};

struct ChannelScenario {
  double carrier_frequency_hz = 27.95e9;
  std::vector<array::Vec3> ue_positions_m;  // in world coordinates, K entries
  array::Vec3 bs_position_m{0.0, 0.0, 0.0};
  double bs_yaw_deg = 0.0;  // rotation of the array boresight about +y
  ClusterSpec clusters;
  std::uint64_t seed = 1;
};

struct PathTap {
  int ue;
  double delay_s;  // referenced to the earliest arrival over all taps
  cplx gain;       // includes FSPL amplitude, carrier phase, element gain
  array::Direction aoa;
};

struct ChannelRealization {
  std::vector<double> subcarrier_offsets_hz;  // baseband frequency per entry
  std::vector<CMat> full_h;                   // per subcarrier, 64 x K
  std::vector<PathTap> taps;
  std::vector<CMat> effective_h;              // per subcarrier, 16 x K (after selection)
};

/// Free-space path loss 20*log10(4 pi d f / c). Rejects d <= 0 and f <= 0.
double fspl_db(double distance_m, double frequency_hz);

/// Deterministic geometric channel on the given frequency grid. The LOS
/// path amplitude is 10^(-fspl/20) with phase from the path length; unit
/// antenna gains unless `bs_element` supplies a receive element pattern.
/// Per-subcarrier entry: sum over paths of gain * a_rx(AoA) * e^(-j2pi f tau).
ChannelRealization generate_channel(const ChannelScenario& scenario,
                                    const array::ArrayGeometry& geometry,
                                    std::span<const double> subcarrier_offsets_hz,
                                    const array::ElementPattern* bs_element = nullptr);

/// Reduces the 64 x K channel to the 16 x K channel seen by the TRx chains:
/// row r applies subarray r's selected beam weights to its 4 element rows.
std::vector<CMat> effective_channel(const ChannelRealization& realization,
                                    std::span<const int> selection,
                                    const std::array<array::BeamWeights, 4>& weights,
                                    const array::ArrayGeometry& geometry);

/// Binary dump: magic "MMWCHAN1", three uint32 LE (subcarriers, rows, cols),
/// then per subcarrier a row-major matrix of float32 LE re/im pairs.
void write_channel_dump(std::ostream& os, std::span<const CMat> matrices);

}  // namespace mmwsim::channel

#endif  // MMWSIM_CHANNEL_MODEL_HPP
