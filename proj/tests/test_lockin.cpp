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

#include "atomradio/lockin.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"

using namespace atomradio;

namespace {

AudioSignal sine(double freq, double amplitude, double phase, double duration,
                 double fs) {
  AudioSignal s;
  s.sample_rate = fs;
  const auto n = static_cast<std::size_t>(std::llround(duration * fs));
  s.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.samples[i] =
        amplitude * std::sin(kTwoPi * freq * static_cast<double>(i) / fs + phase);
  }
  return s;
}

constexpr double kQuarterTurn = -0.5 * std::numbers::pi;

}  // namespace

TEST_CASE("a reference-frequency sine lands in X at the calibrated phase") {
  const double amp = 0.37;
  const AudioSignal s = sine(500.0, amp, 0.0, 0.5, 20000.0);
  LockInConfig config;
  config.reference_freq = 500.0;
  config.reference_phase = kQuarterTurn;

  const LockInOutput out = demodulate(s, config);
  CHECK(out.x == doctest::Approx(amp).epsilon(1e-6));
  // The quadrature residue is set by the double-frequency mixer ripple that
  // survives the output filter, a few parts in 1e6 of the carrier here.
  CHECK(std::abs(out.y) <= 1e-5 * amp);
  CHECK(out.r == doctest::Approx(amp).epsilon(1e-6));
}

TEST_CASE("magnitude is independent of the reference phase") {
  const AudioSignal s = sine(500.0, 0.21, 0.9, 0.5, 20000.0);
  LockInConfig config;
  config.reference_freq = 500.0;

  config.reference_phase = 0.0;
  const LockInOutput a = demodulate(s, config);
  config.reference_phase = 1.1;
  const LockInOutput b = demodulate(s, config);
  CHECK(a.r == doctest::Approx(b.r).epsilon(1e-9));

  // Advancing the reference phase rotates (X, Y) rigidly.
  const Complex za(a.x, a.y);
  const Complex zb(b.x, b.y);
  const Complex rotated = za * std::exp(Complex(0.0, 1.1));
  CHECK(std::abs(zb - rotated) <= 1e-9 * std::abs(za));
}

TEST_CASE("a DC input is rejected by the output filter") {
  AudioSignal s;
  s.sample_rate = 20000.0;
  s.samples.assign(10000, 0.8);
  LockInConfig config;
  config.reference_freq = 500.0;
  const LockInOutput out = demodulate(s, config);
  // DC leaks through as reference-frequency mixer output; four filter stages
  // at omega*tau = 10 leave roughly 1e-5 of it.
  CHECK(out.r <= 1e-4 * 0.8);
}

TEST_CASE("an off-frequency tone is rejected") {
  const AudioSignal s = sine(685.0, 0.5, 0.0, 0.5, 20000.0);
  LockInConfig config;
  config.reference_freq = 500.0;
  const LockInOutput out = demodulate(s, config);
  CHECK(out.r <= 1e-3 * 0.5);
}

TEST_CASE("a square wave at the reference reads its fundamental") {
  AudioSignal s;
  s.sample_rate = 20000.0;
  const double amp = 0.42;
  s.samples.resize(10000);
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    const double arg = std::sin(kTwoPi * 500.0 * static_cast<double>(i) / 20000.0);
    s.samples[i] = amp * (arg > 0.0 ? 1.0 : (arg < 0.0 ? -1.0 : 0.0));
  }
  LockInConfig config;
  config.reference_freq = 500.0;
  config.reference_phase = kQuarterTurn;
  const LockInOutput out = demodulate(s, config);
  CHECK(out.x == doctest::Approx(4.0 * amp / std::numbers::pi).epsilon(1e-3));
}

TEST_CASE("filter order one also calibrates") {
  const double amp = 0.5;
  const AudioSignal s = sine(500.0, amp, 0.0, 0.5, 20000.0);
  LockInConfig config;
  config.reference_freq = 500.0;
  config.reference_phase = kQuarterTurn;
  config.filter_order = 1;
  const LockInOutput out = demodulate(s, config);
  // A single pole leaves more 2f ripple, but the whole-period average
  // still recovers the amplitude tightly.
  CHECK(out.x == doctest::Approx(amp).epsilon(1e-4));
}

TEST_CASE("an explicit time constant overrides the automatic one") {
  const double amp = 0.3;
  const AudioSignal s = sine(500.0, amp, 0.0, 1.0, 20000.0);
  LockInConfig config;
  config.reference_freq = 500.0;
  config.reference_phase = kQuarterTurn;
  config.time_constant = 0.05;  // needs 0.5 s of settling
  const LockInOutput out = demodulate(s, config);
  CHECK(out.x == doctest::Approx(amp).epsilon(1e-6));

  // The same settings cannot settle inside 0.3 s of signal.
  const AudioSignal brief = sine(500.0, amp, 0.0, 0.3, 20000.0);
  CHECK_THROWS_AS(demodulate(brief, config), InsufficientDurationError);
}

TEST_CASE("signals shorter than the settling window are rejected") {
  const AudioSignal s = sine(500.0, 1.0, 0.0, 0.02, 20000.0);
  LockInConfig config;
  config.reference_freq = 500.0;  // 10 tau = 32 ms > 20 ms of signal
  CHECK_THROWS_AS(demodulate(s, config), InsufficientDurationError);
}

TEST_CASE("invalid inputs and settings are rejected") {
  LockInConfig config;
  config.reference_freq = 500.0;

  AudioSignal empty;
  empty.sample_rate = 20000.0;
  CHECK_THROWS_AS(demodulate(empty, config), ConfigError);

  AudioSignal s = sine(500.0, 1.0, 0.0, 0.5, 20000.0);
  s.sample_rate = 0.0;
  CHECK_THROWS_AS(demodulate(s, config), ConfigError);
  s.sample_rate = 20000.0;

  config.reference_freq = 0.0;
  CHECK_THROWS_AS(demodulate(s, config), ConfigError);
  config.reference_freq = 500.0;

  config.filter_order = 0;
  CHECK_THROWS_AS(demodulate(s, config), ConfigError);
}
