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

#include "core/link_budget.hpp"

#include <cmath>

#include "core/channel_model.hpp"

namespace mmwsim::budget {

double eirp_dbm(const LinkBudgetInput& in) {
  return in.p_tx_dbm + in.g_tx_chain_db - in.l_tx_cable_db + in.g_tx_ant_dbi;
}

double measured_pl_db(const LinkBudgetInput& in) {
  return eirp_dbm(in) - (in.p_rx_dbm - in.g_rx_chain_db + in.l_rx_cable_db - in.g_rx_ant_dbi);
}

double theoretical_pl_db(double distance_m, double frequency_hz, double g_tx_ant_dbi,
                         double g_rx_ant_dbi) {
  return channel::fspl_db(distance_m, frequency_hz) - g_tx_ant_dbi - g_rx_ant_dbi;
}

double budget_gap_db(double pl_theoretical_db, double pl_measured_db) {
  return std::abs(pl_theoretical_db - pl_measured_db);
}

LinkBudgetResult evaluate(const LinkBudgetInput& in) {
  LinkBudgetResult r;
  r.eirp_dbm = eirp_dbm(in);
  r.pl_measured_db = measured_pl_db(in);
  r.pl_theoretical_db = theoretical_pl_db(in.distance_m, in.frequency_hz, in.g_tx_ant_dbi,
                                          in.g_rx_ant_dbi);
  r.gap_db = budget_gap_db(r.pl_theoretical_db, r.pl_measured_db);
  return r;
}

}  // namespace mmwsim::budget
