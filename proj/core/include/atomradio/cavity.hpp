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
#include "atomradio/types.hpp"

namespace atomradio {

/// Loop-gap microwave resonator feeding the vapor cell. The resonator is
/// assumed tuned to the atomic ground-state splitting, so a trajectory's
/// delta_mu doubles as its offset from cavity resonance.
struct CavityParams {
  /// Resonance frequency (Hz).
  double f_resonance = 6.834682610e9;
  /// Loaded quality factor.
  double quality_factor = 27000.0;
  /// Calibration: Rabi rate per square-root milliwatt of drive (rad/s per
  /// sqrt(mW)). The default makes 0 dBm produce 2*pi * 58.6 kHz.
  double rabi_per_sqrt_mw = kTwoPi * 58.6e3;

  /// Full energy decay rate kappa = 2*pi*f_resonance / Q (rad/s).
  double kappa() const { return kTwoPi * f_resonance / quality_factor; }

  /// Steady-state field transfer at offset delta (rad/s) from resonance:
  /// 1 / (1 + 2i*delta/kappa). Unity at resonance, half power at
  /// delta = +/- kappa/2.
  Complex field_gain(double delta) const;
};

/// Microwave Rabi rate (rad/s) delivered by a resonant drive of the given
/// power: rabi_per_sqrt_mw * 10^(power_dbm / 20), since 10^(P/20) is the
/// square root of the power in milliwatts.
double input_power_to_rabi(double power_dbm, const CavityParams& cavity);

/// Pass a modulated carrier through the resonator. The Rabi envelope is
/// reweighted by the quasi-static field gain magnitude at the instantaneous
/// carrier offset, then low-passed by the cavity's single-pole field
/// response (pole at kappa/2, discretized exactly for piecewise-constant
/// input). Detuning samples pass through unchanged as instantaneous
/// frequency values.
///
/// Requires sample_rate >= 10x the highest significant spectral content of
/// the envelopes (bins reaching 1% of the strongest non-DC bin); throws
/// SampleRateError otherwise.
CarrierTrajectory cavity_transfer(const CarrierTrajectory& input,
                                  const CavityParams& cavity);

}  // namespace atomradio
