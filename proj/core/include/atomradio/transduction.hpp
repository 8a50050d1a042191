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

#include <cstdint>
#include <span>
#include <vector>

#include "atomradio/modulation.hpp"
#include "atomradio/steady_state.hpp"
#include "atomradio/types.hpp"

namespace atomradio {

/// Probe transmission sampled on the trajectory's time grid.
struct TransmissionTrace {
  std::vector<double> samples;
  double sample_rate = 0.0;
};

struct QuasiStaticOptions {
  /// Solve the steady state directly at every sample (default), or build a
  /// bicubic interpolation table over the visited (omega, delta) rectangle
  /// first. The table is verified against direct solves at 100 random
  /// trajectory points to 1e-4 relative accuracy, refining the grid until it
  /// passes; TableAccuracyError if the finest grid still fails.
  bool use_table = false;
  int table_points_per_axis = 64;
  std::uint64_t verify_seed = 12345;
};

/// Adiabatic limit: each output sample is the steady-state transmission at
/// that sample's instantaneous drive. The baseline supplies the optical
/// parameters; omega_mu and delta_mu come from the trajectory.
TransmissionTrace transduce_quasi_static(
    const CarrierTrajectory& trajectory, const AtomFieldParams& baseline,
    const DecoherenceParams& rates, const TransmissionModel& model,
    const QuasiStaticOptions& options = {});

struct DynamicOptions {
  /// Integration step ceiling (s); 0 picks 0.1 / max_rate per sample.
  double dt_max = 0.0;
};

/// Full time evolution from rho0: the drive is held constant across each
/// trajectory sample interval (zero-order hold) and the master equation is
/// integrated through it. Transmission is evaluated at the start of each
/// interval, so a constant trajectory started from its own steady state
/// reproduces the quasi-static answer exactly.
TransmissionTrace transduce_dynamic(const CarrierTrajectory& trajectory,
                                    const DensityMatrix& rho0,
                                    const AtomFieldParams& baseline,
                                    const DecoherenceParams& rates,
                                    const TransmissionModel& model,
                                    const DynamicOptions& options = {});

/// Transimpedance conversion: volts = gain * T + offset, plus white Gaussian
/// noise of the configured RMS when nonzero.
struct PhotodiodeModel {
  double gain = 1.0;
  double offset = 0.0;
  double noise_rms = 0.0;
};

/// The noise stream comes from a seeded portable generator, so equal seeds
/// give byte-identical output on any platform. No noise values are drawn
/// when noise_rms is zero.
AudioSignal photodiode(const TransmissionTrace& transmission,
                       const PhotodiodeModel& model, std::uint64_t seed);

/// Time constant (s) of the exponential settling after the edges of a
/// square-wave response. Edges are located by 10%/90% level crossings; each
/// settling segment is fit to a + b*exp(-t/tau) and the best segment's tau
/// is returned. Throws NoEdgeError when the trace never crosses its mid
/// level with settled flanks, PoorFitError when no segment fits to within 5%
/// RMS of the step height.
double extract_response_time(std::span<const double> step_response,
                             double sample_rate);

}  // namespace atomradio
