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

#ifndef MMWSIM_OFDM_PHY_HPP
#define MMWSIM_OFDM_PHY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/linalg.hpp"
#include "core/units.hpp"

namespace mmwsim::phy {

// CP-OFDM uplink numerology: 2048-point transform at 30.72 MHz with 1200
// used subcarriers (18 MHz occupied inside the 20 MHz signal bandwidth).
// Used subcarriers are centered around DC with DC itself unused; index
// i in 0..1199 maps to subcarrier k = i - 600 for i < 600 and k = i - 599
// otherwise. Transforms are unitary (1/sqrt(N) both ways).

struct OfdmConfig {
  int fft_size = 2048;
  double sampling_rate_hz = 30.72e6;
  int used_subcarriers = 1200;
  int cp_length = 144;
  int num_ues = 2;

  double subcarrier_spacing_hz() const { return sampling_rate_hz / fft_size; }
  int symbol_length() const { return fft_size + cp_length; }

  /// Signed subcarrier index for used index i.
  int subcarrier_k(int i) const;
  /// FFT bin of used index i.
  int used_bin(int i) const;
  /// Baseband frequency offsets of all used subcarriers, ascending.
  std::vector<double> subcarrier_offsets_hz() const;

  void validate() const;  // throws std::invalid_argument
};

enum class Constellation { Qpsk, Qam16 };

int bits_per_symbol(Constellation c);
const char* constellation_name(Constellation c);
Constellation constellation_from_name(const std::string& name);

/// Gray-mapped symbols with unit average energy.
///
/// QPSK: bit pair (b0,b1) -> ((1-2*b0) + j(1-2*b1)) / sqrt(2), so 00 maps
/// to (1+j)/sqrt(2). 16-QAM: groups of 4 bits (b0,b1,b2,b3); (b0,b1) pick
/// the I level and (b2,b3) the Q level through the Gray table
/// 00->+3, 01->+1, 11->-1, 10->-3, all divided by sqrt(10).
std::vector<cplx> qam_map(std::span<const std::uint8_t> bits, Constellation c);

/// Hard-decision demapping (nearest constellation point).
std::vector<std::uint8_t> qam_demap(std::span<const cplx> symbols, Constellation c);

/// Nearest constellation point, for symbol error counting.
cplx qam_slice(const cplx& symbol, Constellation c);

/// In-place radix-2 FFT, unscaled: X_k = sum_n x_n e^(-j 2 pi k n / N).
/// Length must be a power of two. `inverse` flips the exponent sign.
void fft_inplace(std::vector<cplx>& x, bool inverse);

/// Used-subcarrier symbols (ascending frequency order) to a CP-prefixed
/// time-domain symbol of fft_size + cp_length samples.
std::vector<cplx> ofdm_modulate(std::span<const cplx> freq_symbols, const OfdmConfig& config);

/// Inverse of ofdm_modulate: strips the CP and returns used-subcarrier
/// symbols in ascending frequency order.
std::vector<cplx> ofdm_demodulate(std::span<const cplx> time_samples, const OfdmConfig& config);

/// Comb-orthogonal UE pilots: UE u owns used indices with i % comb == u.
struct PilotPlan {
  int pilot_symbol_index = 0;  // position of the pilot symbol in the slot
  int comb_period = 2;         // = number of UEs

  static PilotPlan make_default(int num_ues);
  std::vector<int> pilot_subcarriers(int ue, const OfdmConfig& config) const;
  void validate(const OfdmConfig& config) const;
};

/// Deterministic unit-magnitude QPSK pilot values for one UE over the full
/// used grid (only the UE's comb positions are transmitted).
std::vector<cplx> pilot_sequence(int ue, const OfdmConfig& config);

/// Per-subcarrier least-squares channel estimate from one received pilot
/// symbol. `rx_pilots[chain][i]` holds the frequency-domain sample of used
/// index i at that chain. LS at each UE's pilot subcarriers, linear
/// interpolation across the comb (edges held constant). Returns one
/// (chains x num_ues) matrix per used subcarrier.
std::vector<CMat> estimate_channel(std::span<const std::vector<cplx>> rx_pilots,
                                   const PilotPlan& plan, const OfdmConfig& config);

/// Zero-forcing detection x = (H^H H)^(-1) H^H y for one subcarrier.
/// Throws std::runtime_error naming `subcarrier` when H is rank deficient.
std::vector<cplx> zf_detect(const CMat& h_eff, std::span<const cplx> y, int subcarrier);

/// 100 * sqrt(mean |xhat - xref|^2 / mean |xref|^2). Rejects empty input.
double evm_percent(std::span<const cplx> equalized, std::span<const cplx> reference);

/// Fraction of hard-decision symbol errors against the reference symbols.
double symbol_error_rate(std::span<const cplx> equalized, std::span<const cplx> reference,
                         Constellation c);

}  // namespace mmwsim::phy

#endif  // MMWSIM_OFDM_PHY_HPP
