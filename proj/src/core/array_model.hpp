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

#ifndef MMWSIM_ARRAY_MODEL_HPP
#define MMWSIM_ARRAY_MODEL_HPP

#include <array>
#include <ostream>
#include <span>
#include <vector>

#include "core/units.hpp"

namespace mmwsim::array {

// 64-element planar array: a 4x4 grid of 2x2 subarrays. Each subarray sits
// behind a butler matrix that offers four fixed beams; one beam per subarray
// feeds one TRx chain. The board fixes the element pitch at 5.5 mm and the
// subarray pitch at 22 mm, i.e. lambda/2 and 2*lambda at the 11 mm design
// wavelength. All electrical phases below use that design wavelength, which
// puts the four butler beams exactly on the direction-cosine quadrants
// (u,v) = (+-1/2, +-1/2).

inline constexpr int kNumElements = 64;
inline constexpr int kNumSubarrays = 16;
inline constexpr int kElementsPerSubarray = 4;
inline constexpr int kNumBeams = 4;

inline constexpr double kDesignWavelengthM = 0.011;
inline constexpr double kElementSpacingM = 0.0055;   // lambda/2
inline constexpr double kSubarraySpacingM = 0.022;   // 2*lambda

// Cosine-exponent patch element, calibrated once on a fine angular grid so
// that the subarray beam peak lands at 10.1 dBi (exponent 2).
inline constexpr double kDefaultElementExponent = 2.0;
inline constexpr double kCalibratedElementPeakGainDbi = 5.772987;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

/// Look direction. The array lies in the x-y plane with boresight +z;
/// azimuth rotates toward +x, elevation toward +y.
struct Direction {
  double azimuth_rad = 0.0;
  double elevation_rad = 0.0;
};

/// Unit pointing vector: (sin az cos el, sin el, cos az cos el).
/// Direction cosines u = x, v = y.
Vec3 unit_vector(const Direction& d);

struct ArrayGeometry {
  std::array<Vec3, kNumElements> element_positions;  // meters
  std::array<int, kNumElements> subarray_of;         // element -> subarray id
  double wavelength = kDesignWavelengthM;            // meters, electrical

  /// 16 subarrays of 4 elements on the default 5.5 mm / 22 mm grid.
  static ArrayGeometry make_default();
  static ArrayGeometry make(double wavelength_m, double element_spacing_m, double subarray_spacing_m);

  /// Element ids of one subarray in local (m,n) grid order:
  /// (0,0), (1,0), (0,1), (1,1). Butler weight coefficients use this order.
  std::array<int, kElementsPerSubarray> subarray_elements(int subarray) const;
};

struct BeamWeights {
  std::array<cplx, kElementsPerSubarray> weights;  // unit magnitude each
  int beam_index = 0;
};

struct ElementPattern {
  double peak_gain_dbi = kCalibratedElementPeakGainDbi;
  double cosine_exponent = kDefaultElementExponent;  // applied to the power pattern

  /// Gain toward unit vector k. -inf behind the array plane.
  double gain_dbi(const Vec3& k) const;
};

/// Unit-norm array response for the given element subset.
/// Element phase: (2*pi/lambda) * (position . k). Rejects directions behind
/// the array plane and empty subsets.
std::vector<cplx> steering_vector(const ArrayGeometry& geometry, const Direction& direction,
                                  std::span<const int> subset);

/// Fixed 2x2 butler beams. Beam b points at the direction-cosine quadrant
/// (u,v) = (su/2, sv/2) with (su,sv) = (+,+), (+,-), (-,+), (-,-) for
/// b = 0..3. Weights are the transmission phases of the passive network;
/// a beam's response in direction k is sum_i w_i * a_i(k) (no conjugation).
BeamWeights butler_weights(int beam_index);

std::array<BeamWeights, kNumBeams> butler_set();

/// Complex response of one subarray (absolute element positions, including
/// the subarray's grid phase offset): sum_i w_i * exp(j phi_i(k)).
cplx subarray_response(const ArrayGeometry& geometry, int subarray, const BeamWeights& weights,
                       const Vec3& k);

/// Subarray gain in dBi: element gain plus 20*log10(|response|/2). The /2
/// normalizes the 4-element coherent sum so uniform weights at boresight
/// with an isotropic element give 10*log10(4) = 6.02 dBi.
double subarray_gain_dbi(const ArrayGeometry& geometry, const BeamWeights& weights,
                         const ElementPattern& element, const Direction& direction);

/// Digitally combined gain of the enabled subarrays (per-chain phase
/// alignment, magnitudes added): element gain plus
/// 20*log10(sum_r |S_r| / sqrt(4*N_enabled)). With one subarray enabled this
/// reduces to subarray_gain_dbi; with all 16 it sits 10*log10(16) = 12.04 dB
/// above it. `selection` must hold 16 beam indices; an empty `enabled` span
/// means all subarrays.
double full_array_gain_dbi(const ArrayGeometry& geometry, std::span<const int> selection,
                           const ElementPattern& element, const Direction& direction,
                           std::span<const int> enabled = {});

/// Peak gain and its direction over an az/el grid with the given step.
struct PatternPeak {
  double gain_dbi;
  Direction direction;
};
PatternPeak subarray_peak(const ArrayGeometry& geometry, const BeamWeights& weights,
                          const ElementPattern& element, double grid_step_deg);
PatternPeak full_array_peak(const ArrayGeometry& geometry, std::span<const int> selection,
                            const ElementPattern& element, double grid_step_deg);

/// Solves for the element peak gain that puts the subarray beam peak at
/// `target_peak_dbi` for the given pattern exponent (fine-grid search).
/// kCalibratedElementPeakGainDbi was frozen from this with a 0.05 deg grid.
double calibrate_element_peak_gain(double cosine_exponent, double target_peak_dbi,
                                   double grid_step_deg = 0.05);

/// CSV pattern cut over the front hemisphere: az_deg, el_deg, gain_dbi.
/// beam_index -1 exports the full-array pattern with all subarrays on beam 0.
void export_pattern_csv(std::ostream& os, const ArrayGeometry& geometry,
                        const ElementPattern& element, int beam_index, double grid_step_deg);

}  // namespace mmwsim::array

#endif  // MMWSIM_ARRAY_MODEL_HPP
