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

#include "core/array_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "core/format.hpp"

namespace mmwsim::array {

Vec3 unit_vector(const Direction& d) {
  const double caz = std::cos(d.azimuth_rad), saz = std::sin(d.azimuth_rad);
  const double cel = std::cos(d.elevation_rad), sel = std::sin(d.elevation_rad);
  return {saz * cel, sel, caz * cel};
}

ArrayGeometry ArrayGeometry::make_default() {
  return make(kDesignWavelengthM, kElementSpacingM, kSubarraySpacingM);
}

ArrayGeometry ArrayGeometry::make(double wavelength_m, double element_spacing_m,
                                  double subarray_spacing_m) {
  if (wavelength_m <= 0.0 || element_spacing_m <= 0.0 || subarray_spacing_m <= 0.0)
    throw std::invalid_argument("ArrayGeometry: spacings and wavelength must be positive");

  ArrayGeometry g;
  g.wavelength = wavelength_m;
  for (int sy = 0; sy < 4; ++sy) {
    for (int sx = 0; sx < 4; ++sx) {
      const int subarray = sy * 4 + sx;
      const double cx = (sx - 1.5) * subarray_spacing_m;
      const double cy = (sy - 1.5) * subarray_spacing_m;
      for (int n = 0; n < 2; ++n) {
        for (int m = 0; m < 2; ++m) {
          const int elem = subarray * kElementsPerSubarray + n * 2 + m;
          g.element_positions[elem] = {cx + (m - 0.5) * element_spacing_m,
                                       cy + (n - 0.5) * element_spacing_m, 0.0};
          g.subarray_of[elem] = subarray;
        }
      }
    }
  }
  return g;
}

std::array<int, kElementsPerSubarray> ArrayGeometry::subarray_elements(int subarray) const {
  if (subarray < 0 || subarray >= kNumSubarrays)
    throw std::invalid_argument("subarray id out of range");
  std::array<int, kElementsPerSubarray> ids{};
  int count = 0;
  for (int e = 0; e < kNumElements; ++e)
    if (subarray_of[e] == subarray) ids[count++] = e;
  if (count != kElementsPerSubarray) throw std::runtime_error("geometry: subarray not 4 elements");
  return ids;
}

double ElementPattern::gain_dbi(const Vec3& k) const {
  if (k.z <= 0.0) return -std::numeric_limits<double>::infinity();
  return peak_gain_dbi + 10.0 * cosine_exponent * std::log10(k.z);  // k.z = cos(theta)
}

static cplx element_response(const ArrayGeometry& g, int elem, const Vec3& k) {
  const double phase = 2.0 * kPi / g.wavelength * dot(g.element_positions[elem], k);
  return cplx(std::cos(phase), std::sin(phase));
}

std::vector<cplx> steering_vector(const ArrayGeometry& geometry, const Direction& direction,
                                  std::span<const int> subset) {
  if (subset.empty()) throw std::invalid_argument("steering_vector: empty element subset");
  const Vec3 k = unit_vector(direction);
  if (k.z <= 0.0) throw std::invalid_argument("steering_vector: direction behind the array plane");

  std::vector<cplx> v;
  v.reserve(subset.size());
  for (int e : subset) {
    if (e < 0 || e >= kNumElements) throw std::invalid_argument("steering_vector: bad element id");
    v.push_back(element_response(geometry, e, k));
  }
  const double norm = std::sqrt(static_cast<double>(subset.size()));
  for (auto& c : v) c /= norm;
  return v;
}

BeamWeights butler_weights(int beam_index) {
  if (beam_index < 0 || beam_index >= kNumBeams)
    throw std::invalid_argument("butler_weights: beam index must be in 0..3");
  static constexpr int kQuadrant[kNumBeams][2] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};
  const int su = kQuadrant[beam_index][0];
  const int sv = kQuadrant[beam_index][1];

  BeamWeights w;
  w.beam_index = beam_index;
  int idx = 0;
  for (int n = 0; n < 2; ++n) {
    for (int m = 0; m < 2; ++m) {
      // conjugate match to the quadrant response over the lambda/2 grid:
      // -90 degrees per element step toward (u,v) = (su/2, sv/2)
      const double phase = -kPi / 2.0 * (m * su + n * sv);
      w.weights[idx++] = cplx(std::cos(phase), std::sin(phase));
    }
  }
  return w;
}

std::array<BeamWeights, kNumBeams> butler_set() {
  return {butler_weights(0), butler_weights(1), butler_weights(2), butler_weights(3)};
}

cplx subarray_response(const ArrayGeometry& geometry, int subarray, const BeamWeights& weights,
                       const Vec3& k) {
  const auto ids = geometry.subarray_elements(subarray);
  cplx s = 0.0;
  for (int i = 0; i < kElementsPerSubarray; ++i)
    s += weights.weights[i] * element_response(geometry, ids[i], k);
  return s;
}

static void require_front(const Vec3& k, const char* who) {
  if (k.z <= 0.0) throw std::invalid_argument(std::string(who) + ": direction behind the array plane");
}

double subarray_gain_dbi(const ArrayGeometry& geometry, const BeamWeights& weights,
                         const ElementPattern& element, const Direction& direction) {
  const Vec3 k = unit_vector(direction);
  require_front(k, "subarray_gain");
  const double af = std::abs(subarray_response(geometry, 0, weights, k));
  return element.gain_dbi(k) + amplitude_to_db(af / 2.0);
}

double full_array_gain_dbi(const ArrayGeometry& geometry, std::span<const int> selection,
                           const ElementPattern& element, const Direction& direction,
                           std::span<const int> enabled) {
  if (selection.size() != static_cast<std::size_t>(kNumSubarrays))
    throw std::invalid_argument("full_array_gain: selection must list 16 beam indices");
  const Vec3 k = unit_vector(direction);
  require_front(k, "full_array_gain");

  std::vector<int> all;
  if (enabled.empty()) {
    all.resize(kNumSubarrays);
    for (int r = 0; r < kNumSubarrays; ++r) all[r] = r;
    enabled = all;
  }

  double amp = 0.0;
  for (int r : enabled) {
    if (r < 0 || r >= kNumSubarrays) throw std::invalid_argument("full_array_gain: bad subarray id");
    amp += std::abs(subarray_response(geometry, r, butler_weights(selection[r]), k));
  }
  const double norm = std::sqrt(static_cast<double>(kElementsPerSubarray * enabled.size()));
  return element.gain_dbi(k) + amplitude_to_db(amp / norm);
}

template <typename GainFn>
static PatternPeak grid_peak(double grid_step_deg, GainFn&& gain) {
  PatternPeak best{-std::numeric_limits<double>::infinity(), {}};
  for (double az = -89.5; az <= 89.5; az += grid_step_deg) {
    for (double el = -89.5; el <= 89.5; el += grid_step_deg) {
      const Direction d{deg_to_rad(az), deg_to_rad(el)};
      const double g = gain(d);
      if (g > best.gain_dbi) best = {g, d};
    }
  }
  return best;
}

PatternPeak subarray_peak(const ArrayGeometry& geometry, const BeamWeights& weights,
                          const ElementPattern& element, double grid_step_deg) {
  return grid_peak(grid_step_deg, [&](const Direction& d) {
    return subarray_gain_dbi(geometry, weights, element, d);
  });
}

PatternPeak full_array_peak(const ArrayGeometry& geometry, std::span<const int> selection,
                            const ElementPattern& element, double grid_step_deg) {
  return grid_peak(grid_step_deg, [&](const Direction& d) {
    return full_array_gain_dbi(geometry, selection, element, d);
  });
}

double calibrate_element_peak_gain(double cosine_exponent, double target_peak_dbi,
                                   double grid_step_deg) {
  const ArrayGeometry g = ArrayGeometry::make_default();
  const ElementPattern zero_peak{0.0, cosine_exponent};
  const PatternPeak p = subarray_peak(g, butler_weights(0), zero_peak, grid_step_deg);
  return target_peak_dbi - p.gain_dbi;
}

void export_pattern_csv(std::ostream& os, const ArrayGeometry& geometry,
                        const ElementPattern& element, int beam_index, double grid_step_deg) {
  os << "az_deg,el_deg,gain_dbi\n";
  std::vector<int> selection(kNumSubarrays, 0);
  for (double az = -89.5; az <= 89.5; az += grid_step_deg) {
    for (double el = -89.5; el <= 89.5; el += grid_step_deg) {
      const Direction d{deg_to_rad(az), deg_to_rad(el)};
      const double gain = (beam_index < 0)
                              ? full_array_gain_dbi(geometry, selection, element, d)
                              : subarray_gain_dbi(geometry, butler_weights(beam_index), element, d);
      os << fmt_double(az) << ',' << fmt_double(el) << ',' << fmt_double(gain) << '\n';
    }
  }
}

}  // namespace mmwsim::array
