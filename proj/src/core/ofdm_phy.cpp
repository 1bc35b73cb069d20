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

#include "core/ofdm_phy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/rng.hpp"

namespace mmwsim::phy {

int OfdmConfig::subcarrier_k(int i) const {
  const int half = used_subcarriers / 2;
  return (i < half) ? i - half : i - half + 1;
}

int OfdmConfig::used_bin(int i) const {
  const int k = subcarrier_k(i);
  return (k >= 0) ? k : k + fft_size;
}

std::vector<double> OfdmConfig::subcarrier_offsets_hz() const {
  std::vector<double> f(used_subcarriers);
  for (int i = 0; i < used_subcarriers; ++i) f[i] = subcarrier_k(i) * subcarrier_spacing_hz();
  return f;
}

void OfdmConfig::validate() const {
  if (fft_size < 2 || (fft_size & (fft_size - 1)) != 0)
    throw std::invalid_argument("ofdm: fft_size must be a power of two");
  if (sampling_rate_hz <= 0.0) throw std::invalid_argument("ofdm: sampling rate must be positive");
  if (used_subcarriers <= 0 || used_subcarriers >= fft_size)
    throw std::invalid_argument("ofdm: used_subcarriers must be in 1..fft_size-1");
  if (used_subcarriers % 2 != 0)
    throw std::invalid_argument("ofdm: used_subcarriers must be even (DC unused)");
  if (cp_length < 0 || cp_length >= fft_size)
    throw std::invalid_argument("ofdm: cp_length must be in 0..fft_size-1");
  if (num_ues < 1 || num_ues > 12) throw std::invalid_argument("ofdm: num_ues must be in 1..12");
}

int bits_per_symbol(Constellation c) { return c == Constellation::Qpsk ? 2 : 4; }

const char* constellation_name(Constellation c) {
  return c == Constellation::Qpsk ? "qpsk" : "16qam";
}

Constellation constellation_from_name(const std::string& name) {
  if (name == "qpsk") return Constellation::Qpsk;
  if (name == "16qam") return Constellation::Qam16;
  throw std::invalid_argument("unknown constellation '" + name + "' (expected qpsk or 16qam)");
}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt10 = 0.31622776601683793320;

// Gray level table for one 16-QAM axis: bits (b_hi, b_lo) -> level.
constexpr double kGray16[4] = {+3.0, +1.0, -3.0, -1.0};  // index = b_hi*2 + b_lo

double gray16_level(std::uint8_t hi, std::uint8_t lo) { return kGray16[hi * 2 + lo]; }

void gray16_bits(double level, std::uint8_t* hi, std::uint8_t* lo) {
  // inverse of kGray16 on the sliced levels {+3,+1,-1,-3}
  if (level > 2.0) { *hi = 0; *lo = 0; }
  else if (level > 0.0) { *hi = 0; *lo = 1; }
  else if (level > -2.0) { *hi = 1; *lo = 1; }
  else { *hi = 1; *lo = 0; }
}

double slice_axis16(double v) {
  const double s = v / kInvSqrt10;
  if (s > 2.0) return 3.0;
  if (s > 0.0) return 1.0;
  if (s > -2.0) return -1.0;
  return -3.0;
}

}  // namespace

std::vector<cplx> qam_map(std::span<const std::uint8_t> bits, Constellation c) {
  const int bps = bits_per_symbol(c);
  if (bits.size() % static_cast<std::size_t>(bps) != 0)
    throw std::invalid_argument("qam_map: bit count not divisible by bits per symbol");

  std::vector<cplx> out;
  out.reserve(bits.size() / bps);
  if (c == Constellation::Qpsk) {
    for (std::size_t i = 0; i < bits.size(); i += 2)
      out.emplace_back((1.0 - 2.0 * bits[i]) * kInvSqrt2, (1.0 - 2.0 * bits[i + 1]) * kInvSqrt2);
  } else {
    for (std::size_t i = 0; i < bits.size(); i += 4)
      out.emplace_back(gray16_level(bits[i], bits[i + 1]) * kInvSqrt10,
                       gray16_level(bits[i + 2], bits[i + 3]) * kInvSqrt10);
  }
  return out;
}

std::vector<std::uint8_t> qam_demap(std::span<const cplx> symbols, Constellation c) {
  std::vector<std::uint8_t> bits;
  bits.reserve(symbols.size() * bits_per_symbol(c));
  if (c == Constellation::Qpsk) {
    for (const auto& s : symbols) {
      bits.push_back(s.real() < 0.0 ? 1 : 0);
      bits.push_back(s.imag() < 0.0 ? 1 : 0);
    }
  } else {
    for (const auto& s : symbols) {
      std::uint8_t hi, lo;
      gray16_bits(slice_axis16(s.real()), &hi, &lo);
      bits.push_back(hi);
      bits.push_back(lo);
      gray16_bits(slice_axis16(s.imag()), &hi, &lo);
      bits.push_back(hi);
      bits.push_back(lo);
    }
  }
  return bits;
}

cplx qam_slice(const cplx& symbol, Constellation c) {
  if (c == Constellation::Qpsk) {
    return cplx(symbol.real() < 0.0 ? -kInvSqrt2 : kInvSqrt2,
                symbol.imag() < 0.0 ? -kInvSqrt2 : kInvSqrt2);
  }
  return cplx(slice_axis16(symbol.real()) * kInvSqrt10, slice_axis16(symbol.imag()) * kInvSqrt10);
}

void fft_inplace(std::vector<cplx>& x, bool inverse) {
  const std::size_t n = x.size();
  if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("fft: length must be a power of two");

  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }

  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * kPi / static_cast<double>(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = x[i + k];
        const cplx v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

std::vector<cplx> ofdm_modulate(std::span<const cplx> freq_symbols, const OfdmConfig& config) {
  if (freq_symbols.size() != static_cast<std::size_t>(config.used_subcarriers))
    throw std::invalid_argument("ofdm_modulate: expected one symbol per used subcarrier");

  std::vector<cplx> grid(config.fft_size, cplx(0.0, 0.0));
  for (int i = 0; i < config.used_subcarriers; ++i) grid[config.used_bin(i)] = freq_symbols[i];

  fft_inplace(grid, true);
  const double scale = 1.0 / std::sqrt(static_cast<double>(config.fft_size));
  for (auto& s : grid) s *= scale;

  std::vector<cplx> out;
  out.reserve(config.symbol_length());
  out.insert(out.end(), grid.end() - config.cp_length, grid.end());
  out.insert(out.end(), grid.begin(), grid.end());
  return out;
}

std::vector<cplx> ofdm_demodulate(std::span<const cplx> time_samples, const OfdmConfig& config) {
  if (time_samples.size() != static_cast<std::size_t>(config.symbol_length()))
    throw std::invalid_argument("ofdm_demodulate: unexpected symbol length");

  std::vector<cplx> grid(time_samples.begin() + config.cp_length, time_samples.end());
  fft_inplace(grid, false);
  const double scale = 1.0 / std::sqrt(static_cast<double>(config.fft_size));

  std::vector<cplx> out(config.used_subcarriers);
  for (int i = 0; i < config.used_subcarriers; ++i) out[i] = grid[config.used_bin(i)] * scale;
  return out;
}

PilotPlan PilotPlan::make_default(int num_ues) {
  PilotPlan p;
  p.pilot_symbol_index = 0;
  p.comb_period = num_ues;
  return p;
}

void PilotPlan::validate(const OfdmConfig& config) const {
  if (comb_period < config.num_ues)
    throw std::invalid_argument("pilot plan: comb shorter than the UE count leaves UEs without pilots");
  if (comb_period > config.used_subcarriers)
    throw std::invalid_argument("pilot plan: comb longer than the used grid");
  if (pilot_symbol_index < 0) throw std::invalid_argument("pilot plan: bad pilot symbol index");
}

std::vector<int> PilotPlan::pilot_subcarriers(int ue, const OfdmConfig& config) const {
  if (ue < 0 || ue >= config.num_ues) throw std::invalid_argument("pilot plan: bad UE index");
  std::vector<int> idx;
  for (int i = ue; i < config.used_subcarriers; i += comb_period) idx.push_back(i);
  return idx;
}

std::vector<cplx> pilot_sequence(int ue, const OfdmConfig& config) {
  Rng rng = Rng::stream(kPilotSeed, static_cast<std::uint64_t>(ue) + 1);
  std::vector<cplx> seq(config.used_subcarriers);
  for (auto& s : seq) {
    const std::uint64_t q = rng.next_u64() & 3;
    const double phase = kPi / 4.0 + kPi / 2.0 * static_cast<double>(q);
    s = cplx(std::cos(phase), std::sin(phase));
  }
  return seq;
}

std::vector<CMat> estimate_channel(std::span<const std::vector<cplx>> rx_pilots,
                                   const PilotPlan& plan, const OfdmConfig& config) {
  plan.validate(config);
  if (rx_pilots.empty()) throw std::invalid_argument("estimate_channel: no receive chains");
  const int num_chains = static_cast<int>(rx_pilots.size());
  const int num_sc = config.used_subcarriers;
  for (const auto& row : rx_pilots)
    if (row.size() != static_cast<std::size_t>(num_sc))
      throw std::invalid_argument("estimate_channel: pilot grid width mismatch");

  std::vector<CMat> est(num_sc, CMat(num_chains, config.num_ues));

  for (int u = 0; u < config.num_ues; ++u) {
    const auto pilots = plan.pilot_subcarriers(u, config);
    if (pilots.empty()) throw std::invalid_argument("estimate_channel: UE without pilot resources");
    const auto seq = pilot_sequence(u, config);

    for (int chain = 0; chain < num_chains; ++chain) {
      // LS at the pilot positions
      std::vector<cplx> ls(pilots.size());
      for (std::size_t p = 0; p < pilots.size(); ++p)
        ls[p] = rx_pilots[chain][pilots[p]] / seq[pilots[p]];

      // linear interpolation across the comb, edges held
      std::size_t seg = 0;
      for (int i = 0; i < num_sc; ++i) {
        cplx v;
        if (i <= pilots.front()) {
          v = ls.front();
        } else if (i >= pilots.back()) {
          v = ls.back();
        } else {
          while (pilots[seg + 1] < i) ++seg;
          const double span_len = pilots[seg + 1] - pilots[seg];
          const double t = (i - pilots[seg]) / span_len;
          v = ls[seg] * (1.0 - t) + ls[seg + 1] * t;
        }
        est[i](chain, u) = v;
      }
    }
  }
  return est;
}

std::vector<cplx> zf_detect(const CMat& h_eff, std::span<const cplx> y, int subcarrier) {
  if (h_eff.cols() > h_eff.rows())
    throw std::invalid_argument("zf_detect: more UEs than receive chains");
  try {
    return lstsq_solve(h_eff, y);
  } catch (const SingularMatrixError&) {
    throw std::runtime_error("zf_detect: singular effective channel at subcarrier " +
                             std::to_string(subcarrier));
  }
}

double evm_percent(std::span<const cplx> equalized, std::span<const cplx> reference) {
  if (equalized.empty() || equalized.size() != reference.size())
    throw std::invalid_argument("evm_percent: empty or mismatched inputs");
  double err = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < equalized.size(); ++i) {
    err += std::norm(equalized[i] - reference[i]);
    ref += std::norm(reference[i]);
  }
  if (ref == 0.0) throw std::invalid_argument("evm_percent: zero reference power");
  return 100.0 * std::sqrt(err / ref);
}

double symbol_error_rate(std::span<const cplx> equalized, std::span<const cplx> reference,
                         Constellation c) {
  if (equalized.empty() || equalized.size() != reference.size())
    throw std::invalid_argument("symbol_error_rate: empty or mismatched inputs");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < equalized.size(); ++i)
    if (std::abs(qam_slice(equalized[i], c) - reference[i]) > 1e-9) ++errors;
  return static_cast<double>(errors) / static_cast<double>(equalized.size());
}

}  // namespace mmwsim::phy
