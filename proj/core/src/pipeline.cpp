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

#include "atomradio/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "atomradio/cavity.hpp"
#include "atomradio/lindblad.hpp"
#include "atomradio/parallel.hpp"
#include "atomradio/steady_state.hpp"

namespace atomradio {

namespace {

AtomFieldParams drive_at(const AtomFieldParams& baseline,
                         const CarrierTrajectory& traj, std::size_t i) {
  AtomFieldParams fields = baseline;
  fields.omega_mu_rabi = traj.omega_mu[i];
  fields.delta_mu = traj.delta_mu[i];
  return fields;
}

TransmissionTrace transduce(const CarrierTrajectory& traj,
                            const RunConfig& config, TransductionPath path) {
  const AtomFieldParams baseline = atom_params(config);
  const DecoherenceParams rates = decoherence_params(config);
  const TransmissionModel model = transmission_model(config);

  if (path == TransductionPath::kQuasiStatic) {
    QuasiStaticOptions options;
    options.use_table = config.solver.quasi_static_table;
    options.table_points_per_axis = config.solver.table_points_per_axis;
    options.verify_seed = config.seed;
    return transduce_quasi_static(traj, baseline, rates, model, options);
  }

  const DensityMatrix rho0 =
      solve_steady_state(drive_at(baseline, traj, 0), rates);
  DynamicOptions options;
  options.dt_max = config.solver.dt_max_s;
  return transduce_dynamic(traj, rho0, baseline, rates, model, options);
}

// Effective microwave Rabi rate delivered by the cavity when the carrier sits
// at detuning `delta` from resonance.
double delivered_rabi(double rabi_in, double delta, const CavityParams& cavity) {
  return rabi_in * std::abs(cavity.field_gain(delta));
}

// Demodulation figure of merit for picking an operating detuning: the
// steady-state transmission slope the modulation couples to, evaluated with
// the cavity-weighted carrier amplitude.
double operating_metric(double delta, double rabi_in, ModulationMode mode,
                        const RunConfig& config) {
  AtomFieldParams fields = atom_params(config);
  fields.delta_mu = delta;
  fields.omega_mu_rabi = delivered_rabi(rabi_in, delta, cavity_params(config));
  const TransmissionSensitivities s = transmission_sensitivities(
      fields, decoherence_params(config), transmission_model(config));
  return mode == ModulationMode::kFm ? std::abs(s.d_delta) : std::abs(s.d_omega);
}

struct SweepTone {
  double freq_hz;
  double sample_rate;
  double duration;
};

// Sweep points choose their own sampling: fast enough for the lock-in mixer,
// long enough for the filter to settle plus a useful averaging window.
SweepTone sweep_tone_plan(double mod_freq_hz, const RunConfig& config) {
  SweepTone plan;
  plan.freq_hz = mod_freq_hz;
  plan.sample_rate = std::clamp(25.0 * mod_freq_hz, 8000.0, 200000.0);
  const LockInConfig lockin = lockin_config(config, mod_freq_hz);
  const double tau = lockin.time_constant > 0.0
                         ? lockin.time_constant
                         : 10.0 / (kTwoPi * lockin.reference_freq);
  const double settle = 10.0 * tau;
  const double window = std::max(5.0 / mod_freq_hz, 5.0 * tau);
  plan.duration = settle + window + 2.0 / plan.sample_rate;
  return plan;
}

LockInOutput evaluate_sweep_point(const RunConfig& config, double delta0,
                                  double rabi0, const SweepTone& tone_plan,
                                  TransductionPath path,
                                  double reference_phase) {
  const AudioSignal tone =
      make_tone(tone_plan.freq_hz, config.tone.amplitude_v, config.tone.shape,
                tone_plan.duration, tone_plan.sample_rate);

  ModulationConfig modulation = modulation_config(config);
  modulation.carrier_rabi_0 = rabi0;
  modulation.carrier_detuning_0 = delta0;

  const CarrierTrajectory encoded = encode(tone, modulation);
  const CarrierTrajectory driven =
      cavity_transfer(encoded, cavity_params(config));
  const TransmissionTrace trace = transduce(driven, config, path);
  const AudioSignal voltage =
      photodiode(trace, photodiode_model(config), config.seed);

  LockInConfig lockin = lockin_config(config, tone_plan.freq_hz);
  lockin.reference_phase = reference_phase;
  return demodulate(voltage, lockin);
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& config, const AudioSignal& audio,
                            TransductionPath path) {
  PipelineResult result;
  result.encoded = encode(audio, modulation_config(config));
  result.after_cavity = cavity_transfer(result.encoded, cavity_params(config));
  result.transmission = transduce(result.after_cavity, config, path);
  result.voltage =
      photodiode(result.transmission, photodiode_model(config), config.seed);
  return result;
}

SteadySweepResult steady_sweep(const RunConfig& config, SteadyAxis axis,
                               std::span<const double> axis_values) {
  if (axis_values.empty()) throw ConfigError("steady sweep needs axis values");
  const AtomFieldParams base = atom_params(config);
  const DecoherenceParams rates = decoherence_params(config);
  const TransmissionModel model = transmission_model(config);

  SteadySweepResult result;
  result.axis.assign(axis_values.begin(), axis_values.end());
  if (axis == SteadyAxis::kDeltaMu) {
    for (double khz : config.steady_sweep.omega_mu_rabi_khz) {
      result.rabi_values.push_back(kTwoPi * khz * 1e3);
    }
    if (result.rabi_values.empty()) {
      result.rabi_values.push_back(base.omega_mu_rabi);
    }
  }

  const std::size_t rows =
      axis == SteadyAxis::kDeltaMu ? result.rabi_values.size() : 1;
  result.transmission.assign(rows,
                             std::vector<double>(axis_values.size(), 0.0));
  for (std::size_t k = 0; k < rows; ++k) {
    auto& row = result.transmission[k];
    parallel_for(axis_values.size(), [&](std::size_t i) {
      AtomFieldParams fields = base;
      if (axis == SteadyAxis::kDeltaMu) {
        fields.delta_mu = axis_values[i];
        fields.omega_mu_rabi = result.rabi_values[k];
      } else {
        fields.omega_mu_rabi = axis_values[i];
      }
      row[i] = steady_transmission(fields, rates, model);
    });
  }
  return result;
}

LockInSweepResult lockin_sweep(const RunConfig& config, SweepAxis axis,
                               std::span<const double> axis_values,
                               TransductionPath path) {
  if (axis_values.empty()) throw ConfigError("lock-in sweep needs axis values");
  const AtomFieldParams base = atom_params(config);
  const ModulationConfig modulation = modulation_config(config);

  double delta0 = base.delta_mu;
  if (axis == SweepAxis::kModFrequency) {
    // The operating detuning is re-picked where the transduction slope for
    // the configured mode peaks, so the frequency response is measured at a
    // live operating point rather than wherever the baseline happens to sit.
    const double span = kTwoPi * 300e3;
    const std::size_t n_scan = 121;
    std::vector<double> metric(n_scan);
    parallel_for(n_scan, [&](std::size_t i) {
      const double d =
          -span + 2.0 * span * static_cast<double>(i) /
                      static_cast<double>(n_scan - 1);
      metric[i] = operating_metric(d, modulation.carrier_rabi_0,
                                   modulation.mode, config);
    });
    const std::size_t best =
        static_cast<std::size_t>(std::distance(
            metric.begin(), std::max_element(metric.begin(), metric.end())));
    delta0 = -span + 2.0 * span * static_cast<double>(best) /
                         static_cast<double>(n_scan - 1);
  }

  const bool auto_phase = axis == SweepAxis::kDetuning;
  const double phase = auto_phase ? 0.0 : config.lockin.reference_phase_rad;

  LockInSweepResult result;
  result.points.resize(axis_values.size());
  result.operating_detuning = delta0;
  result.reference_phase = phase;

  parallel_for(axis_values.size(), [&](std::size_t i) {
    const double v = axis_values[i];
    double point_delta = delta0;
    double point_rabi = modulation.carrier_rabi_0;
    double mod_freq = config.tone.freq_hz;
    switch (axis) {
      case SweepAxis::kDetuning:
        point_delta = v;
        break;
      case SweepAxis::kPower:
        point_rabi = input_power_to_rabi(v, cavity_params(config));
        break;
      case SweepAxis::kModFrequency:
        mod_freq = v;
        break;
    }
    const SweepTone plan = sweep_tone_plan(mod_freq, config);
    result.points[i].axis_value = v;
    result.points[i].output =
        evaluate_sweep_point(config, point_delta, point_rabi, plan, path, phase);
  });

  if (auto_phase) {
    // A global reference-phase change rotates every (X, Y) by the same angle.
    // Pick the rotation that puts the strongest response on X, which is what
    // one would dial in on the instrument.
    std::size_t peak = 0;
    for (std::size_t i = 1; i < result.points.size(); ++i) {
      if (result.points[i].output.r > result.points[peak].output.r) peak = i;
    }
    const LockInOutput& p = result.points[peak].output;
    if (p.r > 0.0) {
      const double rot = -std::atan2(p.y, p.x);
      const double c = std::cos(rot);
      const double s = std::sin(rot);
      for (auto& point : result.points) {
        const double x = point.output.x;
        const double y = point.output.y;
        point.output.x = x * c - y * s;
        point.output.y = x * s + y * c;
      }
      result.reference_phase = rot;
    }
    double best_r = 0.0;
    std::size_t best_i = peak;
    for (std::size_t i = 0; i < result.points.size(); ++i) {
      if (result.points[i].output.r > best_r) {
        best_r = result.points[i].output.r;
        best_i = i;
      }
    }
    result.operating_detuning = axis_values[best_i];
  }
  return result;
}

NormalizationInfo normalize_for_wav(AudioSignal& audio) {
  NormalizationInfo info{0.0, 0.0};
  if (audio.samples.empty()) return info;
  double mean = 0.0;
  for (double v : audio.samples) mean += v;
  mean /= static_cast<double>(audio.samples.size());
  double peak = 0.0;
  for (double& v : audio.samples) {
    v -= mean;
    peak = std::max(peak, std::abs(v));
  }
  info.removed_offset = mean;
  // Deviations at the rounding level of the removed offset are DC for all
  // practical purposes; emit silence rather than normalized rounding noise.
  if (peak > 1e-12 * std::abs(mean)) {
    // -6 dBFS headroom.
    const double target = 0.5011872336272722;
    info.gain = target / peak;
    for (double& v : audio.samples) v *= info.gain;
  } else {
    std::fill(audio.samples.begin(), audio.samples.end(), 0.0);
  }
  return info;
}

}  // namespace atomradio
