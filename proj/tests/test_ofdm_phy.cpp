// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the mmwsim contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "core/ofdm_phy.hpp"
#include "core/rng.hpp"

using namespace mmwsim;
using namespace mmwsim::phy;

namespace {

std::vector<std::uint8_t> random_bits(std::size_t n, Rng& rng) {
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
  return bits;
}

}  // namespace

TEST_CASE("numerology: 1200 used subcarriers occupy 18 MHz inside the 20 MHz band") {
  OfdmConfig c;
  CHECK(c.subcarrier_spacing_hz() == doctest::Approx(15000.0));
  CHECK(c.used_subcarriers * c.subcarrier_spacing_hz() == doctest::Approx(18e6));
  c.validate();

  const auto f = c.subcarrier_offsets_hz();
  REQUIRE(f.size() == 1200);
  CHECK(f.front() == doctest::Approx(-600 * 15000.0));
  CHECK(f.back() == doctest::Approx(600 * 15000.0));
  // DC unused: no zero offset
  for (double v : f) CHECK(v != 0.0);
}

TEST_CASE("QPSK mapping: 00 -> (1+j)/sqrt(2)") {
  const std::uint8_t bits[] = {0, 0, 0, 1, 1, 0, 1, 1};
  const auto s = qam_map(bits, Constellation::Qpsk);
  const double a = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s[0] - cplx(a, a)) < 1e-15);
  CHECK(std::abs(s[1] - cplx(a, -a)) < 1e-15);
  CHECK(std::abs(s[2] - cplx(-a, a)) < 1e-15);
  CHECK(std::abs(s[3] - cplx(-a, -a)) < 1e-15);
}

TEST_CASE("16QAM mean symbol energy is exactly 1") {
  std::vector<std::uint8_t> bits;
  for (int v = 0; v < 16; ++v)
    for (int b = 3; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((v >> b) & 1));
  const auto s = qam_map(bits, Constellation::Qam16);
  REQUIRE(s.size() == 16);
  double e = 0.0;
  for (const auto& v : s) e += std::norm(v);
  CHECK(std::abs(e / 16.0 - 1.0) < 1e-12);
}

TEST_CASE("qam round trip for random bits") {
  Rng rng(9);
  for (auto c : {Constellation::Qpsk, Constellation::Qam16}) {
    const auto bits = random_bits(4000, rng);
    const auto syms = qam_map(bits, c);
    CHECK(qam_demap(syms, c) == bits);
  }
}

TEST_CASE("qam_map rejects ragged bit counts") {
  const std::uint8_t bits[] = {0, 1, 0};
  CHECK_THROWS_AS(qam_map(bits, Constellation::Qpsk), std::invalid_argument);
  CHECK_THROWS_AS(qam_map(bits, Constellation::Qam16), std::invalid_argument);
}

TEST_CASE("ofdm modulate: zero in, zero out") {
  OfdmConfig c;
  const std::vector<cplx> zeros(c.used_subcarriers, 0.0);
  const auto t = ofdm_modulate(zeros, c);
  REQUIRE(t.size() == static_cast<std::size_t>(c.symbol_length()));
  for (const auto& s : t) CHECK(std::abs(s) == 0.0);
}

TEST_CASE("ofdm round trip error below 1e-9") {
  OfdmConfig c;
  Rng rng(15);
  std::vector<cplx> x(c.used_subcarriers);
  for (auto& v : x) v = cplx(rng.normal(), rng.normal());
  const auto t = ofdm_modulate(x, c);
  const auto y = ofdm_demodulate(t, c);
  double err = 0.0, ref = 0.0;
  for (int i = 0; i < c.used_subcarriers; ++i) {
    err += std::norm(y[i] - x[i]);
    ref += std::norm(x[i]);
  }
  CHECK(std::sqrt(err / ref) < 1e-9);
}

TEST_CASE("single unit subcarrier gives constant-magnitude time samples") {
  OfdmConfig c;
  std::vector<cplx> x(c.used_subcarriers, 0.0);
  x[300] = cplx(1.0, 0.0);
  const auto t = ofdm_modulate(x, c);
  const double expected = 1.0 / std::sqrt(static_cast<double>(c.fft_size));
  for (std::size_t n = 0; n < t.size(); n += 37)
    CHECK(std::abs(std::abs(t[n]) - expected) < 1e-12);

  // direct DFT spot check of one sample (CP offset accounted for)
  const int k = c.used_bin(300);
  const int n0 = 100;
  const double phase = 2.0 * kPi * k * n0 / static_cast<double>(c.fft_size);
  const cplx direct = cplx(std::cos(phase), std::sin(phase)) * expected;
  CHECK(std::abs(t[c.cp_length + n0] - direct) < 1e-12);
}

TEST_CASE("ofdm energy is conserved between domains") {
  OfdmConfig c;
  Rng rng(25);
  std::vector<cplx> x(c.used_subcarriers);
  for (auto& v : x) v = cplx(rng.normal(), rng.normal());
  const auto t = ofdm_modulate(x, c);
  double freq_e = 0.0;
  for (const auto& v : x) freq_e += std::norm(v);
  double time_e = 0.0;
  for (std::size_t n = c.cp_length; n < t.size(); ++n) time_e += std::norm(t[n]);
  CHECK(std::abs(time_e - freq_e) / freq_e < 1e-9);
}

TEST_CASE("ofdm modulate rejects wrong symbol counts") {
  OfdmConfig c;
  const std::vector<cplx> bad(c.used_subcarriers - 1, 0.0);
  CHECK_THROWS_AS(ofdm_modulate(bad, c), std::invalid_argument);
  const std::vector<cplx> bad_t(c.symbol_length() - 1, 0.0);
  CHECK_THROWS_AS(ofdm_demodulate(bad_t, c), std::invalid_argument);
}

namespace {

// Builds the received pilot grid for a known per-chain channel h(chain, sc).
std::vector<std::vector<cplx>> received_pilots(
    const OfdmConfig& c, const PilotPlan& plan, int chains,
    const std::function<cplx(int, int, int)>& h) {  // (chain, sc, ue)
  std::vector<std::vector<cplx>> rx(chains, std::vector<cplx>(c.used_subcarriers, 0.0));
  for (int u = 0; u < c.num_ues; ++u) {
    const auto seq = pilot_sequence(u, c);
    for (int i = u; i < c.used_subcarriers; i += plan.comb_period)
      for (int chain = 0; chain < chains; ++chain) rx[chain][i] += h(chain, i, u) * seq[i];
  }
  return rx;
}

}  // namespace

TEST_CASE("noiseless flat channel is estimated exactly") {
  OfdmConfig c;
  c.num_ues = 2;
  const auto plan = PilotPlan::make_default(c.num_ues);
  auto h = [](int chain, int, int ue) {
    return cplx(0.3 + 0.1 * chain, -0.2 + 0.05 * ue);
  };
  const auto rx = received_pilots(c, plan, 4, h);
  const auto est = estimate_channel(rx, plan, c);
  for (int sc = 0; sc < c.used_subcarriers; sc += 113)
    for (int chain = 0; chain < 4; ++chain)
      for (int u = 0; u < 2; ++u) CHECK(std::abs(est[sc](chain, u) - h(chain, sc, u)) < 1e-9);
}

TEST_CASE("frequency-selective 2-tap channel is exact at the pilot subcarriers") {
  OfdmConfig c;
  c.num_ues = 2;
  const auto plan = PilotPlan::make_default(c.num_ues);
  const auto offsets = c.subcarrier_offsets_hz();
  auto h = [&](int chain, int sc, int ue) {
    const double tau = 120e-9;
    const cplx a(0.8, 0.1), b(0.25 * (1 + chain % 2), -0.3 + 0.1 * ue);
    const double rot = -2.0 * kPi * offsets[sc] * tau;
    return a + b * cplx(std::cos(rot), std::sin(rot));
  };
  const auto rx = received_pilots(c, plan, 3, h);
  const auto est = estimate_channel(rx, plan, c);
  for (int u = 0; u < 2; ++u)
    for (int i : plan.pilot_subcarriers(u, c))
      for (int chain = 0; chain < 3; ++chain)
        CHECK(std::abs(est[i](chain, u) - h(chain, i, u)) < 1e-12);
}

TEST_CASE("estimation MSE at 30 dB SNR lands near 1e-3 of the channel power") {
  OfdmConfig c;
  c.num_ues = 2;
  const auto plan = PilotPlan::make_default(c.num_ues);
  const cplx h0(1.0, 0.0);  // unit channel, so SNR = 1/noise_var
  const double noise_var = 1e-3;
  Rng rng(77);

  double mse = 0.0;
  long count = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto rx = received_pilots(c, plan, 2, [&](int, int, int) { return h0; });
    for (auto& chain : rx)
      for (auto& v : chain) v += rng.complex_normal(noise_var);
    const auto est = estimate_channel(rx, plan, c);
    for (int sc = 0; sc < c.used_subcarriers; ++sc)
      for (int chain = 0; chain < 2; ++chain)
        for (int u = 0; u < 2; ++u) {
          mse += std::norm(est[sc](chain, u) - h0);
          ++count;
        }
  }
  mse /= static_cast<double>(count);
  // interpolation averages two pilots, so the constant sits in [1/2, 1]
  CHECK(mse > 0.5e-3 / 2.0);
  CHECK(mse < 2.0e-3);
}

TEST_CASE("estimate_channel rejects missing pilot resources") {
  OfdmConfig c;
  c.num_ues = 4;
  PilotPlan plan;
  plan.comb_period = 2;  // UEs 2 and 3 have no pilots
  const std::vector<std::vector<cplx>> rx(4, std::vector<cplx>(c.used_subcarriers, 0.0));
  CHECK_THROWS_AS(estimate_channel(rx, plan, c), std::invalid_argument);
}

TEST_CASE("zf identity: unit column recovers the symbol") {
  CMat h(16, 1);
  h(0, 0) = cplx(1.0, 0.0);
  std::vector<cplx> y(16, 0.0);
  y[0] = cplx(0.3, -0.7);
  const auto x = zf_detect(h, y, 0);
  CHECK(std::abs(x[0] - cplx(0.3, -0.7)) < 1e-12);
}

TEST_CASE("zf recovers x from H x for seeded 16x2 systems") {
  Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    CMat h(16, 2);
    for (auto& v : h.data()) v = cplx(rng.normal(), rng.normal());
    std::vector<cplx> x{cplx(rng.normal(), rng.normal()), cplx(rng.normal(), rng.normal())};
    std::vector<cplx> y(16, 0.0);
    for (int r = 0; r < 16; ++r) y[r] = h(r, 0) * x[0] + h(r, 1) * x[1];
    const auto xhat = zf_detect(h, y, trial);
    CHECK(std::abs(xhat[0] - x[0]) < 1e-9);
    CHECK(std::abs(xhat[1] - x[1]) < 1e-9);
  }
}

TEST_CASE("zf names the subcarrier on rank failure") {
  CMat h(16, 2);
  Rng rng(4);
  for (int r = 0; r < 16; ++r) {
    h(r, 0) = cplx(rng.normal(), rng.normal());
    h(r, 1) = h(r, 0);
  }
  std::vector<cplx> y(16, cplx(1.0, 0.0));
  CHECK_THROWS_WITH_AS(zf_detect(h, y, 371),
                       "zf_detect: singular effective channel at subcarrier 371",
                       std::runtime_error);
}

TEST_CASE("evm basics") {
  const std::vector<cplx> ref{cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  CHECK(evm_percent(ref, ref) == doctest::Approx(0.0));

  std::vector<cplx> scaled = ref;
  for (auto& v : scaled) v *= 1.01;
  CHECK(evm_percent(scaled, ref) == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(evm_percent({}, {}), std::invalid_argument);
}

TEST_CASE("evm under AWGN at 20 dB symbol SNR is 10 percent") {
  Rng rng(88);
  const std::size_t n = 100000;
  std::vector<cplx> ref(n), noisy(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double phase = kPi / 4.0 + kPi / 2.0 * static_cast<double>(rng.next_u64() & 3);
    ref[i] = cplx(std::cos(phase), std::sin(phase));
    noisy[i] = ref[i] + rng.complex_normal(0.01);  // SNR 20 dB on unit symbols
  }
  CHECK(std::abs(evm_percent(noisy, ref) - 10.0) < 0.5);
}

TEST_CASE("symbol error rate counts hard decisions") {
  const auto syms = qam_map(std::vector<std::uint8_t>{0, 0, 0, 1, 1, 0, 1, 1}, Constellation::Qpsk);
  std::vector<cplx> rx = syms;
  CHECK(symbol_error_rate(rx, syms, Constellation::Qpsk) == doctest::Approx(0.0));
  rx[1] = -rx[1];  // push one symbol into another decision region
  CHECK(symbol_error_rate(rx, syms, Constellation::Qpsk) == doctest::Approx(0.25));
}
