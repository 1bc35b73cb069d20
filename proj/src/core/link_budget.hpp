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

#ifndef MMWSIM_LINK_BUDGET_HPP
#define MMWSIM_LINK_BUDGET_HPP

namespace mmwsim::budget {

// dB bookkeeping of the over-the-air bench: EIRP, measured and theoretical
// path loss. All values stay at full precision; rounding happens only in
// report formatting.

struct LinkBudgetInput {
  double p_tx_dbm = 0.0;        // Tx power at the IF input
  double g_tx_chain_db = 0.0;   // effective Tx gain of the chain
  double l_tx_cable_db = 0.0;
  double g_tx_ant_dbi = 0.0;
  double p_rx_dbm = 0.0;        // Rx power at the IF output
  double g_rx_chain_db = 0.0;
  double l_rx_cable_db = 0.0;
  double g_rx_ant_dbi = 0.0;
  double distance_m = 1.0;
  double frequency_hz = 27.95e9;
};

struct LinkBudgetResult {
  double eirp_dbm;
  double pl_measured_db;
  double pl_theoretical_db;
  double gap_db;
};

/// EIRP = P_tx + G_tx_chain - L_tx_cable + G_tx_ant.
double eirp_dbm(const LinkBudgetInput& in);

/// Measured path loss = EIRP - (P_rx - G_rx_chain + L_rx_cable - G_rx_ant).
double measured_pl_db(const LinkBudgetInput& in);

/// Theoretical path loss = FSPL(d, f) - G_tx_ant - G_rx_ant.
double theoretical_pl_db(double distance_m, double frequency_hz, double g_tx_ant_dbi,
                         double g_rx_ant_dbi);

/// |PL_th - PL_m|.
double budget_gap_db(double pl_theoretical_db, double pl_measured_db);

LinkBudgetResult evaluate(const LinkBudgetInput& in);

}  // namespace mmwsim::budget

#endif  // MMWSIM_LINK_BUDGET_HPP
