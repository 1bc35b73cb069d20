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

#ifndef MMWSIM_RNG_HPP
#define MMWSIM_RNG_HPP

#include <cmath>
#include <cstdint>

#include "core/units.hpp"

namespace mmwsim {

/// Seeded PRNG (SplitMix64 core) used everywhere a random draw is needed.
///
/// The standard-library distributions are implementation-defined, so they
/// cannot provide the bit-identical reproducibility the result contract
/// requires. This generator and the transforms below are fixed by this
/// header and produce the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Independent substream of a master seed. Tags are compile-time
  /// constants naming the consumer (channel, sweep noise, data bits, ...).
  static Rng stream(std::uint64_t master_seed, std::uint64_t tag) {
    Rng r(master_seed ^ (tag * 0x9E3779B97F4A7C15ull));
    r.next_u64();  // decorrelate nearby seeds
    return r;
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [a, b).
  double uniform(double a, double b) { return a + uniform() * (b - a); }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  /// Circularly-symmetric complex Gaussian with E[|z|^2] = variance.
  cplx complex_normal(double variance) {
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double amp = std::sqrt(-variance * std::log(u1));
    return cplx(amp * std::cos(2.0 * kPi * u2), amp * std::sin(2.0 * kPi * u2));
  }

  /// Zero-mean Laplacian with the given scale parameter b (variance 2 b^2).
  double laplace(double scale) {
    double u = uniform() - 0.5;
    double s = (u >= 0.0) ? 1.0 : -1.0;
    return -scale * s * std::log(1.0 - 2.0 * std::abs(u));
  }

 private:
  std::uint64_t state_;
};

// Substream tags.
inline constexpr std::uint64_t kRngTagChannel = 0x6368616E6E656Cull;    // "channel"
inline constexpr std::uint64_t kRngTagSweepNoise = 0x7377656570ull;     // "sweep"
inline constexpr std::uint64_t kRngTagDataNoise = 0x72786E6F697365ull;  // "rxnoise"
inline constexpr std::uint64_t kRngTagDataBits = 0x64617461ull;         // "data"

// Pilot sequences are protocol constants known to both link ends; they do
// not depend on the scenario seed.
inline constexpr std::uint64_t kPilotSeed = 0x50494C4F54ull;  // "PILOT"

}  // namespace mmwsim

#endif  // MMWSIM_RNG_HPP
