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

#include <span>
#include <vector>

#include "atomradio/config.hpp"
#include "atomradio/lockin.hpp"
#include "atomradio/modulation.hpp"
#include "atomradio/transduction.hpp"

namespace atomradio {

enum class TransductionPath { kQuasiStatic, kDynamic };

/// One pass of the physical chain:
/// audio -> encode -> cavity -> atoms -> photodiode.
struct PipelineResult {
  CarrierTrajectory encoded;
  CarrierTrajectory after_cavity;
  TransmissionTrace transmission;
  AudioSignal voltage;
};

PipelineResult run_pipeline(const RunConfig& config, const AudioSignal& audio,
                            TransductionPath path);

/// Steady-state transmission sweep (no modulation), one trace per configured
/// carrier Rabi rate.
enum class SteadyAxis { kDeltaMu, kOmegaMu };

struct SteadySweepResult {
  /// Axis values (rad/s).
  std::vector<double> axis;
  /// Carrier Rabi rates traced (rad/s).
  std::vector<double> rabi_values;
  /// transmission[k][i] = T at rabi_values[k], axis[i].
  std::vector<std::vector<double>> transmission;
};

SteadySweepResult steady_sweep(const RunConfig& config, SteadyAxis axis,
                               std::span<const double> axis_values);

/// Lock-in response sweeps over the full chain.
enum class SweepAxis { kDetuning, kPower, kModFrequency };

struct SweepPoint {
  double axis_value = 0.0;
  LockInOutput output;
};

struct LockInSweepResult {
  std::vector<SweepPoint> points;
  /// Reference phase applied to the whole table (rad). Detuning sweeps pick
  /// it to put the peak-magnitude point entirely into X; other axes keep the
  /// configured phase.
  double reference_phase = 0.0;
  /// Operating detuning used (rad/s); mod-frequency sweeps re-select it at
  /// the sensitivity maximum.
  double operating_detuning = 0.0;
};

/// Runs encode -> cavity -> transduce -> photodiode -> demodulate at every
/// axis value. Axis units: detuning rad/s, power dBm, modulation frequency
/// Hz. Points evaluate in parallel; the table order follows axis_values.
LockInSweepResult lockin_sweep(const RunConfig& config, SweepAxis axis,
                               std::span<const double> axis_values,
                               TransductionPath path = TransductionPath::kDynamic);

/// Mean removed, peak scaled to -6 dBFS. Returns the applied gain (0 for an
/// all-DC signal, which comes back as silence).
struct NormalizationInfo {
  double removed_offset = 0.0;
  double gain = 0.0;
};
NormalizationInfo normalize_for_wav(AudioSignal& audio);

}  // namespace atomradio
