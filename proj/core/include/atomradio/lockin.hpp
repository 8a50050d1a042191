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

#include "atomradio/modulation.hpp"

namespace atomradio {

/// Dual-phase lock-in amplifier settings.
struct LockInConfig {
  /// Reference frequency (Hz).
  double reference_freq = 500.0;
  /// Reference phase (rad), added to the in-phase mixer argument.
  double reference_phase = 0.0;
  /// Output filter time constant (s); 0 picks 10 / (2*pi*reference_freq).
  double time_constant = 0.0;
  /// Number of cascaded single-pole stages in the output filter.
  int filter_order = 4;
};

struct LockInOutput {
  /// In-phase and quadrature outputs (signal units).
  double x = 0.0;
  double y = 0.0;
  /// Magnitude sqrt(x^2 + y^2).
  double r = 0.0;
};

/// Demodulates the signal at the reference frequency: mixes with
/// 2*cos(w*t + phase) and 2*sin(w*t + phase), low-passes each channel with
/// the cascaded filter, discards the first 10 time constants, and averages
/// the remainder over a whole number of reference periods. A unit-amplitude
/// sine at the reference lands entirely in X at phase -pi/2. Throws
/// InsufficientDurationError when fewer than 10 time constants plus one
/// period of signal remain after settling.
LockInOutput demodulate(const AudioSignal& signal, const LockInConfig& config);

}  // namespace atomradio
