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

#ifndef MMWSIM_FORMAT_HPP
#define MMWSIM_FORMAT_HPP

#include <charconv>
#include <cmath>
#include <string>

namespace mmwsim {

// CSV and report output must be locale-independent ('.' decimal separator)
// and byte-stable across runs, so doubles go through std::to_chars.

/// Shortest round-trip representation.
inline std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

/// Fixed precision, e.g. fmt_fixed(68.2774, 2) == "68.28".
inline std::string fmt_fixed(double v, int precision) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
  return std::string(buf, r.ptr);
}

}  // namespace mmwsim

#endif  // MMWSIM_FORMAT_HPP
