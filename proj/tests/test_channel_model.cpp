// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the mmwsim contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "core/channel_model.hpp"
#include "core/ofdm_phy.hpp"

using namespace mmwsim;
using namespace mmwsim::channel;

namespace {

std::vector<double> test_grid() {
  phy::OfdmConfig ofdm;
  return ofdm.subcarrier_offsets_hz();
}

ChannelScenario one_ue_scenario(double x, double y, double z) {
  ChannelScenario s;
  s.ue_positions_m = {{x, y, z}};
  s.seed = 7;
  return s;
}

}  // namespace

TEST_CASE("fspl reference values at 27.95 GHz") {
  CHECK(std::abs(fspl_db(1.0, 27.95e9) - 61.38) < 0.01);
  CHECK(std::abs(fspl_db(7.0, 27.95e9) - 78.28) < 0.02);
  CHECK(fspl_db(10.0, 27.95e9) - fspl_db(1.0, 27.95e9) == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("fspl doubles distance for 6.0206 dB") {
  for (double d : {0.5, 3.0, 8.7, 120.0})
    CHECK(std::abs(fspl_db(2.0 * d, 27.95e9) - fspl_db(d, 27.95e9) - 20.0 * std::log10(2.0)) <
          1e-9);
}

TEST_CASE("fspl rejects nonpositive arguments") {
  CHECK_THROWS_AS(fspl_db(0.0, 1e9), std::invalid_argument);
  CHECK_THROWS_AS(fspl_db(-1.0, 1e9), std::invalid_argument);
  CHECK_THROWS_AS(fspl_db(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("pure LOS single-UE channel is rank one with constant element magnitude") {
  const auto g = array::ArrayGeometry::make_default();
  const auto grid = test_grid();
  const auto real = generate_channel(one_ue_scenario(0.0, 0.0, 7.0), g, grid);

  REQUIRE(real.full_h.size() == grid.size());
  REQUIRE(real.taps.size() == 1);

  const double expected = db_to_amplitude(-fspl_db(7.0, 27.95e9));
  for (std::size_t sc = 0; sc < real.full_h.size(); sc += 111) {
    const CMat& h = real.full_h[sc];
    for (int e = 0; e < array::kNumElements; ++e)
      CHECK(std::abs(std::abs(h(e, 0)) - expected) / expected < 1e-6);
  }
}

TEST_CASE("channel generation is bit-identical per seed") {
  const auto g = array::ArrayGeometry::make_default();
  const auto grid = test_grid();
  ChannelScenario s = one_ue_scenario(1.0, -0.5, 5.0);
  s.clusters.count = 3;

  const auto a = generate_channel(s, g, grid);
  const auto b = generate_channel(s, g, grid);
  REQUIRE(a.full_h.size() == b.full_h.size());
  for (std::size_t sc = 0; sc < a.full_h.size(); ++sc) CHECK(a.full_h[sc] == b.full_h[sc]);

  s.seed = 8;
  const auto c = generate_channel(s, g, grid);
  CHECK(!(a.full_h[0] == c.full_h[0]));
}

TEST_CASE("clusters add one tap per cluster per UE") {
  const auto g = array::ArrayGeometry::make_default();
  const auto grid = test_grid();
  ChannelScenario s;
  s.ue_positions_m = {{0.0, 0.0, 4.0}, {1.0, 0.0, 6.0}};
  s.clusters.count = 2;
  const auto real = generate_channel(s, g, grid);
  CHECK(real.taps.size() == 2u * (1 + 2));
}

TEST_CASE("UE at the BS position is rejected") {
  const auto g = array::ArrayGeometry::make_default();
  const auto grid = test_grid();
  CHECK_THROWS_AS(generate_channel(one_ue_scenario(0.0, 0.0, 0.0), g, grid),
                  std::invalid_argument);
}

TEST_CASE("effective channel shapes and antenna-selection weights") {
  const auto g = array::ArrayGeometry::make_default();
  const auto grid = test_grid();
  ChannelScenario s;
  s.ue_positions_m = {{0.3, 0.1, 5.0}, {-0.4, 0.0, 6.0}};
  const auto real = generate_channel(s, g, grid);

  std::vector<int> sel(array::kNumSubarrays, 0);
  const auto eff = effective_channel(real, sel, array::butler_set(), g);
  REQUIRE(eff.size() == grid.size());
  CHECK(eff[0].rows() == 16);
  CHECK(eff[0].cols() == 2);

  // basis weights turn beam application into pure antenna selection
  std::array<array::BeamWeights, 4> basis{};
  for (int b = 0; b < 4; ++b) {
    basis[b].beam_index = b;
    basis[b].weights = {cplx(0, 0), cplx(0, 0), cplx(0, 0), cplx(0, 0)};
    basis[b].weights[b] = cplx(1, 0);
  }
  std::vector<int> pick(array::kNumSubarrays, 2);
  const auto sel_eff = effective_channel(real, pick, basis, g);
  for (int r = 0; r < array::kNumSubarrays; ++r) {
    const int elem = g.subarray_elements(r)[2];
    for (int u = 0; u < 2; ++u)
      CHECK(std::abs(sel_eff[100](r, u) - real.full_h[100](elem, u)) < 1e-15);
  }
}

TEST_CASE("beam aligned with the LOS direction gives the coherent 4-element sum") {
  const auto g = array::ArrayGeometry::make_default();
  const auto grid = test_grid();

  // place the UE exactly on beam 0's design quadrant (u,v) = (0.5, 0.5)
  const double el = std::asin(0.5);
  const double az = std::asin(0.5 / std::cos(el));
  const double d = 6.0;
  const array::Vec3 k = array::unit_vector({az, el});
  const auto real = generate_channel(one_ue_scenario(k.x * d, k.y * d, k.z * d), g, grid);

  std::vector<int> sel(array::kNumSubarrays, 0);
  const auto eff = effective_channel(real, sel, array::butler_set(), g);

  const double elem_mag = std::abs(real.full_h[0](0, 0));
  for (int r = 0; r < array::kNumSubarrays; ++r) {
    const double row_mag = std::abs(eff[0](r, 0));
    CHECK(std::abs(row_mag - 4.0 * elem_mag) / (4.0 * elem_mag) < 1e-9);
  }
}

TEST_CASE("butler beam energies satisfy Parseval per subarray") {
  const auto g = array::ArrayGeometry::make_default();
  const auto grid = test_grid();
  ChannelScenario s;
  s.ue_positions_m = {{0.7, -0.3, 4.0}};
  s.clusters.count = 4;
  s.seed = 21;
  const auto real = generate_channel(s, g, grid);
  const auto ws = array::butler_set();

  std::array<std::vector<CMat>, 4> eff;
  for (int b = 0; b < 4; ++b) {
    std::vector<int> sel(array::kNumSubarrays, b);
    eff[b] = effective_channel(real, sel, ws, g);
  }

  for (std::size_t sc = 0; sc < grid.size(); sc += 97) {
    for (int r = 0; r < array::kNumSubarrays; ++r) {
      double beam_energy = 0.0;
      for (int b = 0; b < 4; ++b) beam_energy += std::norm(eff[b][sc](r, 0));
      double elem_energy = 0.0;
      for (int e : g.subarray_elements(r)) elem_energy += std::norm(real.full_h[sc](e, 0));
      CHECK(std::abs(beam_energy - 4.0 * elem_energy) / (4.0 * elem_energy) < 1e-9);
    }
  }
}

TEST_CASE("effective channel is linear in the full channel") {
  const auto g = array::ArrayGeometry::make_default();
  const auto grid = test_grid();
  const auto real = generate_channel(one_ue_scenario(0.2, 0.0, 3.0), g, grid);

  ChannelRealization scaled = real;
  for (auto& h : scaled.full_h)
    for (auto& v : h.data()) v *= cplx(2.0, -1.0);

  std::vector<int> sel(array::kNumSubarrays, 1);
  const auto a = effective_channel(real, sel, array::butler_set(), g);
  const auto b = effective_channel(scaled, sel, array::butler_set(), g);
  for (int r = 0; r < 16; ++r)
    CHECK(std::abs(b[5](r, 0) - a[5](r, 0) * cplx(2.0, -1.0)) < 1e-18);
}

TEST_CASE("effective channel rejects bad selections") {
  const auto g = array::ArrayGeometry::make_default();
  const auto grid = test_grid();
  const auto real = generate_channel(one_ue_scenario(0.0, 0.0, 2.0), g, grid);
  std::vector<int> bad_len(15, 0);
  CHECK_THROWS_AS(effective_channel(real, bad_len, array::butler_set(), g), std::invalid_argument);
  std::vector<int> bad_idx(16, 0);
  bad_idx[7] = 4;
  CHECK_THROWS_AS(effective_channel(real, bad_idx, array::butler_set(), g), std::invalid_argument);
}

TEST_CASE("channel dump header and payload layout") {
  std::vector<CMat> ms(2, CMat(2, 1));
  ms[0](0, 0) = cplx(1.0, -2.0);
  ms[0](1, 0) = cplx(0.5, 0.0);
  ms[1](0, 0) = cplx(-1.0, 0.25);
  ms[1](1, 0) = cplx(0.0, 0.0);

  std::ostringstream os(std::ios::binary);
  write_channel_dump(os, ms);
  const std::string blob = os.str();
  REQUIRE(blob.size() == 8 + 12 + 2u * 2u * 1u * 8u);
  CHECK(blob.substr(0, 8) == "MMWCHAN1");
  auto u32 = [&](std::size_t off) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(blob[off])) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(blob[off + 1])) << 8) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(blob[off + 2])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(blob[off + 3])) << 24);
  };
  CHECK(u32(8) == 2);   // subcarriers
  CHECK(u32(12) == 2);  // rows
  CHECK(u32(16) == 1);  // cols
  float f0;
  std::uint32_t bits = u32(20);
  std::memcpy(&f0, &bits, 4);
  CHECK(f0 == doctest::Approx(1.0f));
}
