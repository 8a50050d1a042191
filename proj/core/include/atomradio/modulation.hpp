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

#pragma once

#include <cstddef>
#include <vector>

#include "atomradio/types.hpp"

namespace atomradio {

/// Mono audio in volts at a fixed sample rate.
struct AudioSignal {
  std::vector<double> samples;
  double sample_rate = 48000.0;

  double duration() const {
    return sample_rate > 0.0
               ? static_cast<double>(samples.size()) / sample_rate
               : 0.0;
  }
};

enum class Waveform { kSine, kSquare };

/// Test tone: sine A*sin(2*pi*f*t) or square A*sgn(sin(2*pi*f*t)) with
/// sgn(0) = 0. Requires sample_rate >= 20x freq; throws AliasingError
/// otherwise.
AudioSignal make_tone(double freq_hz, double amplitude, Waveform shape,
                      double duration_s, double sample_rate);

enum class ModulationMode { kAm, kFm };

/// How audio maps onto the microwave carrier.
struct ModulationConfig {
  ModulationMode mode = ModulationMode::kAm;
  /// AM index per volt (1/V).
  double m_am = 0.15;
  /// FM deviation per volt (rad/s per V).
  double m_fm = kTwoPi * 40e3;
  /// Unmodulated operating point (rad/s).
  double carrier_rabi_0 = kTwoPi * 74e3;
  double carrier_detuning_0 = 0.0;
};

/// Microwave drive seen by the atoms, sampled on the audio grid:
/// instantaneous Rabi envelope and detuning (rad/s).
struct CarrierTrajectory {
  std::vector<double> omega_mu;
  std::vector<double> delta_mu;
  double sample_rate = 48000.0;

  std::size_t size() const { return omega_mu.size(); }
  double duration() const {
    return sample_rate > 0.0
               ? static_cast<double>(omega_mu.size()) / sample_rate
               : 0.0;
  }
};

/// Encode audio onto the carrier:
///   AM: omega_mu[i] = carrier_rabi_0 * (1 + m_am * v[i]), delta_mu constant;
///   FM: delta_mu[i] = carrier_detuning_0 + m_fm * v[i], omega_mu constant.
/// Throws OvermodulationError when m_am * max|v| >= 1 in AM mode (the
/// envelope would touch or cross zero); never clips silently.
CarrierTrajectory encode(const AudioSignal& audio,
                         const ModulationConfig& modulation);

}  // namespace atomradio
