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

#ifndef MMWSIM_UNITS_HPP
#define MMWSIM_UNITS_HPP

#include <cmath>
#include <complex>
#include <span>

namespace mmwsim {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;           // m/s, exact SI
inline constexpr double kThermalNoiseDbmHz = -174.0;           // kT at 290 K

// Complex baseband samples carry amplitude in sqrt(mW), so power in dBm
// is 10*log10(mean |x|^2) with no further reference constant.

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }
inline double amplitude_to_db(double amp) { return 20.0 * std::log10(amp); }

inline double mean_power(std::span<const cplx> x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& s : x) acc += std::norm(s);
  return acc / static_cast<double>(x.size());
}

inline double mean_power_dbm(std::span<const cplx> x) { return lin_to_db(mean_power(x)); }

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace mmwsim

#endif  // MMWSIM_UNITS_HPP
