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

#include "atomradio/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace atomradio {

AudioSignal make_tone(double freq_hz, double amplitude, Waveform shape,
                      double duration_s, double sample_rate) {
  if (!(sample_rate > 0.0)) throw ConfigError("tone sample rate must be > 0");
  if (freq_hz < 0.0) throw ConfigError("tone frequency must be >= 0");
  if (sample_rate < 20.0 * freq_hz) {
    std::ostringstream os;
    os << "sample rate " << sample_rate << " Hz is below 20x the tone "
       << "frequency " << freq_hz << " Hz";
    throw AliasingError(os.str());
  }
  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  if (n == 0) throw ConfigError("tone duration rounds to zero samples");

  AudioSignal out;
  out.sample_rate = sample_rate;
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s =
        std::sin(kTwoPi * freq_hz * static_cast<double>(i) / sample_rate);
    if (shape == Waveform::kSine) {
      out.samples[i] = amplitude * s;
    } else {
      out.samples[i] = amplitude * (s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0));
    }
  }
  return out;
}

CarrierTrajectory encode(const AudioSignal& audio,
                         const ModulationConfig& modulation) {
  if (audio.samples.empty()) throw ConfigError("audio signal is empty");
  if (!(audio.sample_rate > 0.0)) {
    throw ConfigError("audio sample rate must be > 0");
  }

  const std::size_t n = audio.samples.size();
  CarrierTrajectory out;
  out.sample_rate = audio.sample_rate;
  out.omega_mu.assign(n, modulation.carrier_rabi_0);
  out.delta_mu.assign(n, modulation.carrier_detuning_0);

  if (modulation.mode == ModulationMode::kAm) {
    double peak = 0.0;
    for (const double v : audio.samples) peak = std::max(peak, std::abs(v));
    if (modulation.m_am * peak >= 1.0) {
      std::ostringstream os;
      os << "overmodulation: index " << modulation.m_am << "/V at peak "
         << peak << " V reaches a zero crossing of the envelope";
      throw OvermodulationError(os.str());
    }
    for (std::size_t i = 0; i < n; ++i) {
      out.omega_mu[i] =
          modulation.carrier_rabi_0 * (1.0 + modulation.m_am * audio.samples[i]);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      out.delta_mu[i] =
          modulation.carrier_detuning_0 + modulation.m_fm * audio.samples[i];
    }
  }
  return out;
}

}  // namespace atomradio
