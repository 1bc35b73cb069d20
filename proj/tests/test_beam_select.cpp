// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the mmwsim contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/beam_select.hpp"
#include "core/rng.hpp"

using namespace mmwsim;
using namespace mmwsim::beams;

namespace {

phy::OfdmConfig small_phy(int num_ues) {
  phy::OfdmConfig c;
  c.num_ues = num_ues;
  return c;
}

channel::ChannelScenario scenario_at(double az_rad, double el_rad, double d, std::uint64_t seed) {
  channel::ChannelScenario s;
  const array::Vec3 k = array::unit_vector({az_rad, el_rad});
  s.ue_positions_m = {{k.x * d, k.y * d, k.z * d}};
  s.seed = seed;
  return s;
}

rf::RfChainConfig no_noise_chain() {
  rf::RfChainConfig c;
  c.noise_enabled = false;
  return c;
}

// Brute-force argmax, reimplemented from scratch.
std::array<int, 16> brute_force_argmax(const SweepResult& sweep) {
  std::array<int, 16> out{};
  for (int r = 0; r < 16; ++r) {
    int best = 0;
    double best_val = sweep.magnitude[r][0];
    for (int b = 1; b < 4; ++b)
      if (sweep.magnitude[r][b] > best_val) {
        best_val = sweep.magnitude[r][b];
        best = b;
      }
    out[r] = best;
  }
  return out;
}

}  // namespace

TEST_CASE("LOS on beam 2's quadrant makes column 2 dominate every subarray") {
  const auto g = array::ArrayGeometry::make_default();
  const auto ofdm = small_phy(1);
  const auto plan = phy::PilotPlan::make_default(1);
  // beam 2 points at (u,v) = (-0.5, +0.5)
  const double el = std::asin(0.5);
  const double az = std::asin(-0.5 / std::cos(el));
  const auto real = channel::generate_channel(scenario_at(az, el, 5.0, 1), g,
                                              ofdm.subcarrier_offsets_hz());
  const auto sweep =
      run_beam_sweep(real, array::butler_set(), g, ofdm, plan, no_noise_chain(), 1);
  for (int r = 0; r < 16; ++r)
    for (int b = 0; b < 4; ++b)
      if (b != 2) CHECK(sweep.magnitude[r][2] > sweep.magnitude[r][b]);
}

TEST_CASE("zero channel sweeps to all-zero magnitudes") {
  const auto g = array::ArrayGeometry::make_default();
  const auto ofdm = small_phy(1);
  const auto plan = phy::PilotPlan::make_default(1);
  channel::ChannelRealization real;
  real.subcarrier_offsets_hz = ofdm.subcarrier_offsets_hz();
  real.full_h.assign(real.subcarrier_offsets_hz.size(), CMat(array::kNumElements, 1));
  const auto sweep =
      run_beam_sweep(real, array::butler_set(), g, ofdm, plan, no_noise_chain(), 1);
  for (int r = 0; r < 16; ++r)
    for (int b = 0; b < 4; ++b) CHECK(sweep.magnitude[r][b] == 0.0);
}

TEST_CASE("noiseless sweep magnitudes equal direct beam projections") {
  const auto g = array::ArrayGeometry::make_default();
  const auto ofdm = small_phy(2);
  const auto plan = phy::PilotPlan::make_default(2);
  channel::ChannelScenario s;
  s.ue_positions_m = {{1.0, 0.3, 6.0}, {-0.8, -0.2, 7.5}};
  s.clusters.count = 2;
  s.seed = 5;
  const auto real = channel::generate_channel(s, g, ofdm.subcarrier_offsets_hz());
  const auto ws = array::butler_set();
  const auto sweep = run_beam_sweep(real, ws, g, ofdm, plan, no_noise_chain(), 5);

  // direct projection oracle: |sum_i w_i h_i|^2 over each UE's pilot REs
  for (int r = 0; r < 16; ++r) {
    const auto ids = g.subarray_elements(r);
    for (int b = 0; b < 4; ++b) {
      double expect = 0.0;
      for (int u = 0; u < 2; ++u) {
        for (int i : plan.pilot_subcarriers(u, ofdm)) {
          cplx acc = 0.0;
          for (int e = 0; e < 4; ++e) acc += ws[b].weights[e] * real.full_h[i](ids[e], u);
          expect += std::norm(acc);
        }
      }
      CHECK(std::abs(sweep.magnitude[r][b] - expect) <=
            1e-9 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("select_beams basics") {
  SweepResult sweep{};
  sweep.magnitude[0] = {0.1, 0.9, 0.3, 0.3};
  sweep.magnitude[1] = {0.5, 0.5, 0.5, 0.5};  // tie -> lowest index
  const auto sel = select_beams(sweep);
  CHECK(sel.beam[0] == 1);
  CHECK(sel.beam[1] == 0);
}

TEST_CASE("select_beams matches brute force on 100 seeded random sweeps") {
  Rng rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    SweepResult sweep{};
    for (int r = 0; r < 16; ++r)
      for (int b = 0; b < 4; ++b) sweep.magnitude[r][b] = rng.uniform(0.0, 10.0);
    const auto sel = select_beams(sweep);
    const auto oracle = brute_force_argmax(sweep);
    for (int r = 0; r < 16; ++r) CHECK(sel.beam[r] == oracle[r]);

    // argmax invariance under positive scaling
    const double c = rng.uniform(0.001, 1000.0);
    SweepResult scaled = sweep;
    for (int r = 0; r < 16; ++r)
      for (int b = 0; b < 4; ++b) scaled.magnitude[r][b] *= c;
    const auto sel2 = select_beams(scaled);
    for (int r = 0; r < 16; ++r) CHECK(sel2.beam[r] == sel.beam[r]);
  }
}

TEST_CASE("single-UE LOS selection picks the angularly closest beam") {
  const auto g = array::ArrayGeometry::make_default();
  const auto ofdm = small_phy(1);
  const auto plan = phy::PilotPlan::make_default(1);
  const double expected_uv[4][2] = {{0.5, 0.5}, {0.5, -0.5}, {-0.5, 0.5}, {-0.5, -0.5}};

  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const double u = rng.uniform(-0.7, 0.7), v = rng.uniform(-0.7, 0.7);
    if (u * u + v * v >= 0.9 || std::abs(u) < 0.05 || std::abs(v) < 0.05) continue;
    const double el = std::asin(v);
    const double az = std::asin(u / std::cos(el));
    const auto real = channel::generate_channel(scenario_at(az, el, 6.0, 1), g,
                                                ofdm.subcarrier_offsets_hz());
    const auto sweep =
        run_beam_sweep(real, array::butler_set(), g, ofdm, plan, no_noise_chain(), 1);
    const auto sel = select_beams(sweep);

    int closest = 0;
    double best = 1e9;
    for (int b = 0; b < 4; ++b) {
      const double du = u - expected_uv[b][0], dv = v - expected_uv[b][1];
      if (du * du + dv * dv < best) {
        best = du * du + dv * dv;
        closest = b;
      }
    }
    for (int r = 0; r < 16; ++r) CHECK(sel.beam[r] == closest);
  }
}

TEST_CASE("control word round trips") {
  BeamSelection zero{};
  const auto w0 = encode_control_word(zero, TddState::Rx);
  const auto [sel0, tdd0] = decode_control_word(w0);
  CHECK(sel0.beam == zero.beam);
  CHECK(tdd0 == TddState::Rx);
  CHECK(control_word_hex(w0) == "0x100000000");

  BeamSelection all3;
  all3.beam.fill(3);
  const auto w3 = encode_control_word(all3, TddState::Tx);
  CHECK((w3.word & 0xFFFFFFFFull) == 0xFFFFFFFFull);
  const auto [sel3, tdd3] = decode_control_word(w3);
  CHECK(sel3.beam == all3.beam);
  CHECK(tdd3 == TddState::Tx);
}

TEST_CASE("control word: random selections round trip in both TDD states") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    BeamSelection sel;
    for (auto& b : sel.beam) b = static_cast<int>(rng.next_u64() % 4);
    for (auto state : {TddState::Rx, TddState::Tx}) {
      const auto word = encode_control_word(sel, state);
      const auto [out, tdd] = decode_control_word(word);
      CHECK(out.beam == sel.beam);
      CHECK(tdd == state);
    }
  }
}

TEST_CASE("malformed control words are rejected") {
  CHECK_THROWS_AS(decode_control_word(ControlWord{0x0}), std::invalid_argument);  // tdd 00
  CHECK_THROWS_AS(decode_control_word(ControlWord{0x3ull << 32}), std::invalid_argument);  // tdd 11
  CHECK_THROWS_AS(decode_control_word(ControlWord{0x1ull << 34}), std::invalid_argument);  // stray
}

TEST_CASE("tdd schedule: sweep slots, alternation, periodicity") {
  TddSchedule sch;  // 10 slots/frame, sweep every frame
  CHECK(tdd_schedule_step(0, sch) == SlotKind::Sweep);

  int sweeps = 0;
  for (int p = 0; p < sch.slots_per_frame; ++p)
    if (tdd_schedule_step(p, sch) == SlotKind::Sweep) ++sweeps;
  CHECK(sweeps == 4);

  for (int p = 4; p < sch.slots_per_frame; ++p)
    CHECK(tdd_schedule_step(p, sch) == (p % 2 == 0 ? SlotKind::Rx : SlotKind::Tx));

  TddSchedule sparse;
  sparse.sweep_period_frames = 3;
  for (long p = 0; p < 2 * sparse.period_slots(); ++p)
    CHECK(tdd_schedule_step(p, sparse) == tdd_schedule_step(p + sparse.period_slots(), sparse));
  // non-sweep frames have no sweep slots
  CHECK(tdd_schedule_step(sparse.slots_per_frame, sparse) == SlotKind::Rx);
  CHECK(tdd_schedule_step(sparse.slots_per_frame + 1, sparse) == SlotKind::Tx);
}
