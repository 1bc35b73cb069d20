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

#include "core/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "core/rng.hpp"

namespace mmwsim::channel {

double fspl_db(double distance_m, double frequency_hz) {
  if (distance_m <= 0.0) throw std::invalid_argument("fspl_db: distance must be positive");
  if (frequency_hz <= 0.0) throw std::invalid_argument("fspl_db: frequency must be positive");
  return 20.0 * std::log10(4.0 * kPi * distance_m * frequency_hz / kSpeedOfLight);
}

// BS-frame direction of a world-coordinate point (yaw about +y).
static array::Direction direction_to(const ChannelScenario& s, const array::Vec3& p,
                                     double* distance_out) {
  const double dx = p.x - s.bs_position_m.x;
  const double dy = p.y - s.bs_position_m.y;
  const double dz = p.z - s.bs_position_m.z;
  const double yaw = deg_to_rad(s.bs_yaw_deg);
  const double lx = std::cos(yaw) * dx - std::sin(yaw) * dz;
  const double lz = std::sin(yaw) * dx + std::cos(yaw) * dz;
  const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (distance_out) *distance_out = d;
  if (d <= 0.0) throw std::invalid_argument("channel: UE at BS position");
  return {std::atan2(lx, lz), std::asin(std::clamp(dy / d, -1.0, 1.0))};
}

static double clamp_angle(double rad, double limit_rad) {
  return std::clamp(rad, -limit_rad, limit_rad);
}

ChannelRealization generate_channel(const ChannelScenario& scenario,
                                    const array::ArrayGeometry& geometry,
                                    std::span<const double> subcarrier_offsets_hz,
                                    const array::ElementPattern* bs_element) {
  const int num_ues = static_cast<int>(scenario.ue_positions_m.size());
  if (num_ues < 1 || num_ues > kMaxUes)
    throw std::invalid_argument("channel: UE count must be in 1..12");
  if (scenario.carrier_frequency_hz <= 0.0)
    throw std::invalid_argument("channel: carrier frequency must be positive");
  if (subcarrier_offsets_hz.empty())
    throw std::invalid_argument("channel: empty subcarrier grid");

  Rng rng = Rng::stream(scenario.seed, kRngTagChannel);
  const double lambda_c = kSpeedOfLight / scenario.carrier_frequency_hz;

  ChannelRealization real;
  real.subcarrier_offsets_hz.assign(subcarrier_offsets_hz.begin(), subcarrier_offsets_hz.end());

  for (int u = 0; u < num_ues; ++u) {
    double d = 0.0;
    const array::Direction los = direction_to(scenario, scenario.ue_positions_m[u], &d);
    const double los_amp = db_to_amplitude(-fspl_db(d, scenario.carrier_frequency_hz));
    const double los_phase = -2.0 * kPi * d / lambda_c;

    PathTap tap;
    tap.ue = u;
    tap.delay_s = d / kSpeedOfLight;
    tap.gain = los_amp * cplx(std::cos(los_phase), std::sin(los_phase));
    tap.aoa = los;
    real.taps.push_back(tap);

    const ClusterSpec& cs = scenario.clusters;
    for (int c = 0; c < cs.count; ++c) {
      const double az_mean = rng.uniform(deg_to_rad(-75.0), deg_to_rad(75.0));
      const double el_mean = rng.uniform(deg_to_rad(-40.0), deg_to_rad(40.0));
      const double spread = deg_to_rad(cs.angle_spread_deg);
      PathTap ray;
      ray.ue = u;
      ray.aoa.azimuth_rad = clamp_angle(az_mean + rng.laplace(spread), deg_to_rad(80.0));
      ray.aoa.elevation_rad = clamp_angle(el_mean + rng.laplace(spread), deg_to_rad(80.0));
      const double rel_db = cs.mean_gain_db + cs.gain_sigma_db * rng.normal();
      const double phase = rng.uniform(0.0, 2.0 * kPi);
      ray.gain = los_amp * db_to_amplitude(rel_db) * cplx(std::cos(phase), std::sin(phase));
      ray.delay_s = d / kSpeedOfLight + rng.uniform(0.0, cs.max_excess_delay_ns * 1e-9);
      real.taps.push_back(ray);
    }
  }

  if (bs_element) {
    for (auto& tap : real.taps) {
      const array::Vec3 k = array::unit_vector(tap.aoa);
      if (k.z <= 0.0) throw std::invalid_argument("channel: path behind the array plane");
      tap.gain *= db_to_amplitude(bs_element->gain_dbi(k));
    }
  }

  // Receiver frame timing locks to the earliest arrival.
  double t0 = std::numeric_limits<double>::infinity();
  for (const auto& tap : real.taps) t0 = std::min(t0, tap.delay_s);
  for (auto& tap : real.taps) tap.delay_s -= t0;

  const std::size_t num_sc = subcarrier_offsets_hz.size();
  real.full_h.assign(num_sc, CMat(array::kNumElements, num_ues));

  std::vector<cplx> a(array::kNumElements);
  for (const auto& tap : real.taps) {
    const array::Vec3 k = array::unit_vector(tap.aoa);
    for (int e = 0; e < array::kNumElements; ++e) {
      const double phase = 2.0 * kPi / geometry.wavelength * dot(geometry.element_positions[e], k);
      a[e] = cplx(std::cos(phase), std::sin(phase));
    }
    for (std::size_t sc = 0; sc < num_sc; ++sc) {
      const double rot = -2.0 * kPi * subcarrier_offsets_hz[sc] * tap.delay_s;
      const cplx g = tap.gain * cplx(std::cos(rot), std::sin(rot));
      CMat& h = real.full_h[sc];
      for (int e = 0; e < array::kNumElements; ++e) h(e, tap.ue) += g * a[e];
    }
  }
  return real;
}

std::vector<CMat> effective_channel(const ChannelRealization& realization,
                                    std::span<const int> selection,
                                    const std::array<array::BeamWeights, 4>& weights,
                                    const array::ArrayGeometry& geometry) {
  if (selection.size() != static_cast<std::size_t>(array::kNumSubarrays))
    throw std::invalid_argument("effective_channel: selection must list 16 beam indices");
  for (int b : selection)
    if (b < 0 || b >= array::kNumBeams)
      throw std::invalid_argument("effective_channel: beam index must be in 0..3");
  if (realization.full_h.empty()) throw std::invalid_argument("effective_channel: empty realization");

  const std::size_t num_sc = realization.full_h.size();
  const std::size_t num_ues = realization.full_h.front().cols();

  std::vector<CMat> eff(num_sc, CMat(array::kNumSubarrays, num_ues));
  for (int r = 0; r < array::kNumSubarrays; ++r) {
    const auto ids = geometry.subarray_elements(r);
    const auto& w = weights[static_cast<std::size_t>(selection[r])].weights;
    for (std::size_t sc = 0; sc < num_sc; ++sc) {
      const CMat& full = realization.full_h[sc];
      for (std::size_t u = 0; u < num_ues; ++u) {
        cplx acc = 0.0;
        for (int i = 0; i < array::kElementsPerSubarray; ++i) acc += w[i] * full(ids[i], u);
        eff[sc](r, u) = acc;
      }
    }
  }
  return eff;
}

namespace {

void put_u32_le(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_f32_le(std::ostream& os, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32_le(os, bits);
}

}  // namespace

void write_channel_dump(std::ostream& os, std::span<const CMat> matrices) {
  if (matrices.empty()) throw std::invalid_argument("channel dump: nothing to write");
  os.write("MMWCHAN1", 8);
  put_u32_le(os, static_cast<std::uint32_t>(matrices.size()));
  put_u32_le(os, static_cast<std::uint32_t>(matrices.front().rows()));
  put_u32_le(os, static_cast<std::uint32_t>(matrices.front().cols()));
  for (const auto& m : matrices)
    for (const auto& v : m.data()) {
      put_f32_le(os, static_cast<float>(v.real()));
      put_f32_le(os, static_cast<float>(v.imag()));
    }
}

}  // namespace mmwsim::channel
