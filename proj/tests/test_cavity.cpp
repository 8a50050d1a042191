// Copyright 2026 The atomradio Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "atomradio/cavity.hpp"

#include <cmath>

#include "atomradio/spectrum.hpp"
#include "doctest.h"

using namespace atomradio;

namespace {

CarrierTrajectory constant_trajectory(double omega, double delta,
                                      std::size_t n, double fs) {
  CarrierTrajectory t;
  t.sample_rate = fs;
  t.omega_mu.assign(n, omega);
  t.delta_mu.assign(n, delta);
  return t;
}

}  // namespace

TEST_CASE("drive power calibration follows the square-root law") {
  const CavityParams cav;
  CHECK(input_power_to_rabi(0.0, cav) == kTwoPi * 58.6e3);
  CHECK(input_power_to_rabi(-20.0, cav) ==
        doctest::Approx(kTwoPi * 5.86e3).epsilon(1e-14));
  CHECK(input_power_to_rabi(-40.0, cav) ==
        doctest::Approx(kTwoPi * 0.586e3).epsilon(1e-13));
  CHECK(input_power_to_rabi(6.0, cav) ==
        doctest::Approx(kTwoPi * 58.6e3 * std::pow(10.0, 0.3)).epsilon(1e-13));
}

TEST_CASE("resonator linewidth comes from the quality factor") {
  const CavityParams cav;
  CHECK(cav.kappa() / kTwoPi ==
        doctest::Approx(6.834682610e9 / 27000.0).epsilon(1e-12));
  // about 253 kHz for the default resonator
  CHECK(cav.kappa() / kTwoPi == doctest::Approx(253136.39).epsilon(1e-6));
}

TEST_CASE("field gain is a single pole at half the linewidth") {
  const CavityParams cav;
  const double kappa = cav.kappa();

  CHECK(cav.field_gain(0.0) == Complex(1.0, 0.0));
  CHECK(std::abs(cav.field_gain(0.5 * kappa)) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  for (const double delta : {1e3, 25e3, 130e3, 400e3}) {
    const double d = kTwoPi * delta;
    const Complex g = cav.field_gain(d);
    const double expect = 1.0 / std::sqrt(1.0 + std::pow(2.0 * d / kappa, 2));
    CHECK(std::abs(g) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::arg(g) == doctest::Approx(-std::atan(2.0 * d / kappa)));
    // magnitude even, phase odd
    CHECK(std::abs(cav.field_gain(-d)) == doctest::Approx(std::abs(g)));
    CHECK(std::arg(cav.field_gain(-d)) == doctest::Approx(-std::arg(g)));
  }
}

TEST_CASE("audio-band offsets pass essentially unattenuated") {
  const CavityParams cav;
  const double attenuation = 1.0 - std::abs(cav.field_gain(kTwoPi * 1e3));
  CHECK(attenuation < 1e-4);
  CHECK(std::abs(cav.field_gain(kTwoPi * 1e3)) > 0.9999);
}

TEST_CASE("a constant resonant drive passes through unchanged") {
  const CavityParams cav;
  const auto in = constant_trajectory(kTwoPi * 74e3, 0.0, 400, 48000.0);
  const CarrierTrajectory out = cavity_transfer(in, cav);
  REQUIRE(out.size() == in.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out.omega_mu[i] == in.omega_mu[i]);
    CHECK(out.delta_mu[i] == in.delta_mu[i]);
  }
}

TEST_CASE("a constant detuned drive is scaled by the resonance profile") {
  const CavityParams cav;
  const double delta = kTwoPi * 95e3;
  const auto in = constant_trajectory(kTwoPi * 74e3, delta, 400, 48000.0);
  const CarrierTrajectory out = cavity_transfer(in, cav);
  const double expect = kTwoPi * 74e3 * std::abs(cav.field_gain(delta));
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out.omega_mu[i] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("detuning samples pass through as instantaneous frequency") {
  const CavityParams cav;
  CarrierTrajectory in;
  in.sample_rate = 48000.0;
  const std::size_t n = 480;
  in.omega_mu.assign(n, kTwoPi * 74e3);
  in.delta_mu.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    in.delta_mu[i] = kTwoPi * 20e3 *
                     std::sin(kTwoPi * 500.0 * static_cast<double>(i) / 48000.0);
  }
  const CarrierTrajectory out = cavity_transfer(in, cav);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(out.delta_mu[i] == in.delta_mu[i]);
  }
}

TEST_CASE("the envelope pole attenuates fast amplitude modulation") {
  const CavityParams cav;
  const double fs = 2e6;
  const double fm = 20e3;
  const double m = 0.2;
  const std::size_t n = 10000;  // 5 ms
  CarrierTrajectory in;
  in.sample_rate = fs;
  in.omega_mu.resize(n);
  in.delta_mu.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    in.omega_mu[i] =
        kTwoPi * 74e3 *
        (1.0 + m * std::sin(kTwoPi * fm * static_cast<double>(i) / fs));
  }
  const CarrierTrajectory out = cavity_transfer(in, cav);

  // Tail well past the pole's ~1.3 us settling.
  const std::size_t tail = n / 2;
  const double in_ac = tone_amplitude(
      std::span<const double>(in.omega_mu).subspan(tail), fs, fm);
  const double out_ac = tone_amplitude(
      std::span<const double>(out.omega_mu).subspan(tail), fs, fm);

  const double expect =
      1.0 / std::sqrt(1.0 + std::pow(2.0 * kTwoPi * fm / cav.kappa(), 2));
  CHECK(out_ac / in_ac == doctest::Approx(expect).epsilon(2e-3));
  CHECK(out_ac < in_ac);
}

TEST_CASE("undersampled envelopes are rejected") {
  const CavityParams cav;
  // A 3 kHz square wave carries significant harmonics well past fs / 10.
  CarrierTrajectory in;
  in.sample_rate = 48000.0;
  const std::size_t n = 4800;
  in.omega_mu.resize(n);
  in.delta_mu.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::sin(kTwoPi * 3000.0 * static_cast<double>(i) / 48000.0);
    in.omega_mu[i] = kTwoPi * 74e3 * (1.0 + 0.3 * (s > 0.0 ? 1.0 : -1.0));
  }
  CHECK_THROWS_AS(cavity_transfer(in, cav), SampleRateError);

  // The same carrier with a slow sine is fine.
  for (std::size_t i = 0; i < n; ++i) {
    in.omega_mu[i] =
        kTwoPi * 74e3 *
        (1.0 + 0.3 * std::sin(kTwoPi * 100.0 * static_cast<double>(i) / 48000.0));
  }
  CHECK_NOTHROW(cavity_transfer(in, cav));
}

TEST_CASE("empty and inconsistent trajectories are rejected") {
  const CavityParams cav;
  CarrierTrajectory empty;
  CHECK_THROWS_AS(cavity_transfer(empty, cav), ConfigError);

  CarrierTrajectory ragged;
  ragged.sample_rate = 48000.0;
  ragged.omega_mu = {1.0, 2.0};
  ragged.delta_mu = {0.0};
  CHECK_THROWS_AS(cavity_transfer(ragged, cav), ConfigError);
}
