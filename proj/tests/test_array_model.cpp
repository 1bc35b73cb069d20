// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the mmwsim contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/array_model.hpp"
#include "core/rng.hpp"

using namespace mmwsim;
using namespace mmwsim::array;

namespace {

// Test-local beam response, written from the phase formula alone so the
// grid-search checks do not share code with subarray_response().
cplx oracle_subarray_response(const ArrayGeometry& g, const BeamWeights& w, double u, double v) {
  const double wsq = u * u + v * v;
  if (wsq >= 1.0) return 0.0;
  const double kz = std::sqrt(1.0 - wsq);
  cplx acc = 0.0;
  const auto ids = g.subarray_elements(0);
  for (int i = 0; i < kElementsPerSubarray; ++i) {
    const auto& p = g.element_positions[ids[i]];
    const double phase = 2.0 * kPi / g.wavelength * (p.x * u + p.y * v + p.z * kz);
    acc += w.weights[i] * cplx(std::cos(phase), std::sin(phase));
  }
  return acc;
}

}  // namespace

TEST_CASE("default geometry: 16 subarrays of 4 elements on the 5.5 / 22 mm grid") {
  const auto g = ArrayGeometry::make_default();
  CHECK(g.wavelength == doctest::Approx(0.011));
  int counts[kNumSubarrays] = {};
  for (int e = 0; e < kNumElements; ++e) counts[g.subarray_of[e]]++;
  for (int r = 0; r < kNumSubarrays; ++r) CHECK(counts[r] == 4);

  // intra-subarray spacing lambda/2 = 5.5 mm, subarray pitch 2 lambda = 22 mm
  const auto s0 = g.subarray_elements(0);
  const double dx = g.element_positions[s0[1]].x - g.element_positions[s0[0]].x;
  CHECK(dx == doctest::Approx(0.0055));
  const auto s1 = g.subarray_elements(1);
  const double pitch = g.element_positions[s1[0]].x - g.element_positions[s0[0]].x;
  CHECK(pitch == doctest::Approx(0.022));
}

TEST_CASE("steering vector at boresight is (1,1,1,1)/2 for one subarray") {
  const auto g = ArrayGeometry::make_default();
  const auto ids = g.subarray_elements(5);
  const auto v = steering_vector(g, {0.0, 0.0}, ids);
  REQUIRE(v.size() == 4);
  for (const auto& c : v) {
    CHECK(c.real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(c.imag()) < 1e-12);
  }
}

TEST_CASE("steering phase step is 90 degrees along x at u = 0.5") {
  // u = sin(az)cos(el) = 0.5 with el = 0; expected step 2pi/lambda * (lambda/2) * 0.5
  const auto g = ArrayGeometry::make_default();
  const auto ids = g.subarray_elements(0);
  const Direction d{std::asin(0.5), 0.0};
  const auto v = steering_vector(g, d, ids);
  const double step = std::arg(v[1] * std::conj(v[0]));
  CHECK(step == doctest::Approx(kPi / 2.0).epsilon(1e-9));
}

TEST_CASE("steering vector is unit norm for random front-hemisphere directions") {
  const auto g = ArrayGeometry::make_default();
  std::vector<int> all(kNumElements);
  for (int e = 0; e < kNumElements; ++e) all[e] = e;
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const Direction d{rng.uniform(-1.4, 1.4), rng.uniform(-1.4, 1.4)};
    if (unit_vector(d).z <= 0.0) continue;
    const auto v = steering_vector(g, d, all);
    double n = 0.0;
    for (const auto& c : v) n += std::norm(c);
    CHECK(std::abs(n - 1.0) < 1e-12);
  }
}

TEST_CASE("steering vector rejects empty subsets and rear directions") {
  const auto g = ArrayGeometry::make_default();
  CHECK_THROWS_AS(steering_vector(g, {0.0, 0.0}, {}), std::invalid_argument);
  const auto ids = g.subarray_elements(0);
  CHECK_THROWS_AS(steering_vector(g, {kPi, 0.0}, ids), std::invalid_argument);
}

TEST_CASE("butler beam 0 phases are (0, -90, -90, -180) degrees") {
  const auto w = butler_weights(0);
  const double expected[4] = {0.0, -90.0, -90.0, -180.0};
  for (int i = 0; i < 4; ++i) {
    double deg = std::arg(w.weights[i]) * 180.0 / kPi;
    if (deg > 179.5) deg -= 360.0;  // -180 and +180 are the same phase
    CHECK(deg == doctest::Approx(expected[i]).epsilon(1e-9));
    CHECK(std::abs(std::abs(w.weights[i]) - 1.0) < 1e-12);
  }
}

TEST_CASE("butler beams are pairwise orthogonal") {
  const auto ws = butler_set();
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      cplx ip = 0.0;
      for (int i = 0; i < 4; ++i) ip += std::conj(ws[a].weights[i]) * ws[b].weights[i];
      CHECK(std::abs(ip) < 1e-12);
    }
}

TEST_CASE("butler beam index out of range is rejected") {
  CHECK_THROWS_AS(butler_weights(4), std::invalid_argument);
  CHECK_THROWS_AS(butler_weights(-1), std::invalid_argument);
}

TEST_CASE("grid search puts each butler beam peak on its (u,v) quadrant") {
  const auto g = ArrayGeometry::make_default();
  const double expected_uv[4][2] = {{0.5, 0.5}, {0.5, -0.5}, {-0.5, 0.5}, {-0.5, -0.5}};
  for (int b = 0; b < 4; ++b) {
    const auto w = butler_weights(b);
    double best = -1.0, bu = 0.0, bv = 0.0;
    for (double u = -0.95; u <= 0.95; u += 0.005) {
      for (double v = -0.95; v <= 0.95; v += 0.005) {
        const double m = std::abs(oracle_subarray_response(g, w, u, v));
        if (m > best) {
          best = m;
          bu = u;
          bv = v;
        }
      }
    }
    CHECK(bu == doctest::Approx(expected_uv[b][0]).epsilon(0.02));
    CHECK(bv == doctest::Approx(expected_uv[b][1]).epsilon(0.02));
    CHECK(best == doctest::Approx(4.0).epsilon(1e-6));
  }
}

TEST_CASE("isotropic element with uniform weights gives 6.02 dBi at boresight") {
  const auto g = ArrayGeometry::make_default();
  BeamWeights uniform;
  uniform.beam_index = 0;
  uniform.weights = {cplx(1, 0), cplx(1, 0), cplx(1, 0), cplx(1, 0)};
  const ElementPattern isotropic{0.0, 0.0};
  const double gain = subarray_gain_dbi(g, uniform, isotropic, {0.0, 0.0});
  CHECK(gain == doctest::Approx(10.0 * std::log10(4.0)).epsilon(1e-9));
}

TEST_CASE("calibrated subarray peak is 10.1 dBi") {
  const auto g = ArrayGeometry::make_default();
  const ElementPattern patch;  // calibrated defaults
  const auto peak = subarray_peak(g, butler_weights(0), patch, 0.5);
  CHECK(std::abs(peak.gain_dbi - 10.1) < 0.05);
}

TEST_CASE("calibration helper reproduces the frozen element peak gain") {
  const double peak = calibrate_element_peak_gain(kDefaultElementExponent, 10.1, 0.25);
  CHECK(peak == doctest::Approx(kCalibratedElementPeakGainDbi).epsilon(1e-3));
}

TEST_CASE("beam 0 is deeply suppressed at beam 3's peak") {
  const auto g = ArrayGeometry::make_default();
  const ElementPattern patch;
  const auto peak3 = subarray_peak(g, butler_weights(3), patch, 0.25);
  const double g0 = subarray_gain_dbi(g, butler_weights(0), patch, peak3.direction);
  CHECK(g0 < 10.1 - 10.0);
}

TEST_CASE("subarray gain is mirror-symmetric between opposite beams") {
  const auto g = ArrayGeometry::make_default();
  const ElementPattern patch;
  const int mirror[4] = {3, 2, 1, 0};
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Direction d{rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
    if (unit_vector(d).z <= 1e-6) continue;
    for (int b = 0; b < 4; ++b) {
      const double g1 = subarray_gain_dbi(g, butler_weights(b), patch, d);
      const Direction md{-d.azimuth_rad, -d.elevation_rad};
      const double g2 = subarray_gain_dbi(g, butler_weights(mirror[b]), patch, md);
      if (std::isfinite(g1) || std::isfinite(g2)) CHECK(std::abs(g1 - g2) < 1e-9);
    }
  }
}

TEST_CASE("full array: 16 coherent subarrays sit 12.04 dB above one subarray") {
  const auto g = ArrayGeometry::make_default();
  const ElementPattern patch;
  const std::vector<int> all0(kNumSubarrays, 0);

  const auto sub = subarray_peak(g, butler_weights(0), patch, 0.5);
  const double full_at_peak = full_array_gain_dbi(g, all0, patch, sub.direction);
  CHECK(std::abs(full_at_peak - (sub.gain_dbi + 10.0 * std::log10(16.0))) < 1e-9);
  CHECK(std::abs(full_at_peak - 22.14) < 0.1);

  const auto full = full_array_peak(g, all0, patch, 0.5);
  CHECK(std::abs(full.gain_dbi - sub.gain_dbi - 12.04) < 0.1);
}

TEST_CASE("full array gain with a single enabled subarray equals the subarray gain") {
  const auto g = ArrayGeometry::make_default();
  const ElementPattern patch;
  const std::vector<int> sel(kNumSubarrays, 2);
  const std::vector<int> only{9};
  const Direction d{0.3, -0.2};
  CHECK(full_array_gain_dbi(g, sel, patch, d, only) ==
        doctest::Approx(subarray_gain_dbi(g, butler_weights(2), patch, d)).epsilon(1e-12));
}

TEST_CASE("full array selection must list 16 beams") {
  const auto g = ArrayGeometry::make_default();
  const ElementPattern patch;
  const std::vector<int> short_sel(15, 0);
  CHECK_THROWS_AS(full_array_gain_dbi(g, short_sel, patch, {0.0, 0.0}), std::invalid_argument);
}
