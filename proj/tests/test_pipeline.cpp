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

#include <cmath>
#include <vector>

#include "atomradio/cavity.hpp"
#include "atomradio/spectrum.hpp"
#include "doctest.h"

using namespace atomradio;

namespace {

RunConfig small_config() {
  RunConfig config;
  config.tone.freq_hz = 500.0;
  config.tone.sample_rate_hz = 12000.0;
  config.tone.duration_s = 0.05;
  config.photodiode.noise_rms_v = 1e-3;  // makes the seed wiring observable
  return config;
}

}  // namespace

TEST_CASE("pipeline stages chain the component calls exactly") {
  const RunConfig config = small_config();
  const AudioSignal audio = config_tone(config);
  const PipelineResult result =
      run_pipeline(config, audio, TransductionPath::kQuasiStatic);

  const CarrierTrajectory encoded = encode(audio, modulation_config(config));
  REQUIRE(result.encoded.size() == encoded.size());
  CHECK(result.encoded.omega_mu == encoded.omega_mu);
  CHECK(result.encoded.delta_mu == encoded.delta_mu);

  const CarrierTrajectory after =
      cavity_transfer(encoded, cavity_params(config));
  CHECK(result.after_cavity.omega_mu == after.omega_mu);
  CHECK(result.after_cavity.delta_mu == after.delta_mu);

  QuasiStaticOptions options;
  options.use_table = config.solver.quasi_static_table;
  options.table_points_per_axis = config.solver.table_points_per_axis;
  options.verify_seed = config.seed;
  const TransmissionTrace trace = transduce_quasi_static(
      after, atom_params(config), decoherence_params(config),
      transmission_model(config), options);
  CHECK(result.transmission.samples == trace.samples);

  const AudioSignal volts =
      photodiode(trace, photodiode_model(config), config.seed);
  CHECK(result.voltage.samples == volts.samples);
}

TEST_CASE("dynamic pipeline starts from the first sample's steady state") {
  RunConfig config = small_config();
  config.tone.duration_s = 0.02;
  const AudioSignal audio = config_tone(config);
  const PipelineResult result =
      run_pipeline(config, audio, TransductionPath::kDynamic);

  const CarrierTrajectory after = cavity_transfer(
      encode(audio, modulation_config(config)), cavity_params(config));
  AtomFieldParams first = atom_params(config);
  first.omega_mu_rabi = after.omega_mu.front();
  first.delta_mu = after.delta_mu.front();
  DynamicOptions options;
  options.dt_max = config.solver.dt_max_s;
  const TransmissionTrace trace = transduce_dynamic(
      after, solve_steady_state(first, decoherence_params(config)),
      atom_params(config), decoherence_params(config),
      transmission_model(config), options);
  CHECK(result.transmission.samples == trace.samples);
}

TEST_CASE("recovered tone amplitude is linear in modulation depth") {
  RunConfig config = small_config();
  config.photodiode.noise_rms_v = 0.0;
  config.tone.duration_s = 0.1;

  auto response = [&](double m) {
    config.modulation.m_am_per_volt = m;
    const AudioSignal audio = config_tone(config);
    const PipelineResult result =
        run_pipeline(config, audio, TransductionPath::kQuasiStatic);
    return tone_amplitude(result.voltage.samples, result.voltage.sample_rate,
                          500.0);
  };

  const double big = response(0.01);
  const double small = response(0.001);
  CHECK(big / small == doctest::Approx(10.0).epsilon(0.01));
}

TEST_CASE("silence in gives silence out") {
  RunConfig config = small_config();
  config.photodiode.noise_rms_v = 0.0;
  config.tone.amplitude_v = 0.0;
  config.tone.duration_s = 0.05;
  const AudioSignal audio = config_tone(config);
  const PipelineResult result =
      run_pipeline(config, audio, TransductionPath::kQuasiStatic);
  // An unmodulated carrier maps every sample through the same steady state,
  // so the voltage is exactly constant.
  REQUIRE(!result.voltage.samples.empty());
  for (const double v : result.voltage.samples) {
    CHECK(v == result.voltage.samples.front());
  }
}

TEST_CASE("wav normalization recenters and rescales to -6 dBFS") {
  AudioSignal audio;
  audio.sample_rate = 8000.0;
  audio.samples.resize(800);
  for (std::size_t i = 0; i < audio.samples.size(); ++i) {
    audio.samples[i] =
        0.4 + 0.002 * std::sin(kTwoPi * 100.0 * static_cast<double>(i) / 8000.0);
  }
  const NormalizationInfo info = normalize_for_wav(audio);
  CHECK(info.removed_offset == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(info.gain > 0.0);

  double mean = 0.0;
  double peak = 0.0;
  for (const double v : audio.samples) {
    mean += v;
    peak = std::max(peak, std::abs(v));
  }
  mean /= static_cast<double>(audio.samples.size());
  CHECK(std::abs(mean) <= 1e-12);
  CHECK(peak == doctest::Approx(std::pow(10.0, -6.0 / 20.0)).epsilon(1e-12));
}

TEST_CASE("an all-DC signal normalizes to silence") {
  AudioSignal audio;
  audio.sample_rate = 8000.0;
  audio.samples.assign(100, 0.73);
  const NormalizationInfo info = normalize_for_wav(audio);
  CHECK(info.gain == 0.0);
  CHECK(info.removed_offset == doctest::Approx(0.73));
  for (const double v : audio.samples) CHECK(v == 0.0);
}

TEST_CASE("steady sweep traces each configured carrier amplitude") {
  RunConfig config;
  config.steady_sweep.omega_mu_rabi_khz = {40.0, 74.0};
  const std::vector<double> axis = {-kTwoPi * 50e3, 0.0, kTwoPi * 50e3};

  const SteadySweepResult result =
      steady_sweep(config, SteadyAxis::kDeltaMu, axis);
  REQUIRE(result.rabi_values.size() == 2);
  REQUIRE(result.transmission.size() == 2);
  CHECK(result.axis == axis);
  CHECK(result.rabi_values[0] == doctest::Approx(kTwoPi * 40e3));
  CHECK(result.rabi_values[1] == doctest::Approx(kTwoPi * 74e3));

  const DecoherenceParams g = decoherence_params(config);
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i < axis.size(); ++i) {
      AtomFieldParams f = atom_params(config);
      f.omega_mu_rabi = result.rabi_values[k];
      f.delta_mu = axis[i];
      CHECK(result.transmission[k][i] ==
            doctest::Approx(steady_transmission(f, g, transmission_model(config)))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("steady sweep over drive strength uses the configured detuning") {
  RunConfig config;
  const std::vector<double> axis = {kTwoPi * 20e3, kTwoPi * 74e3};
  const SteadySweepResult result =
      steady_sweep(config, SteadyAxis::kOmegaMu, axis);
  REQUIRE(result.transmission.size() == 1);

  AtomFieldParams f = atom_params(config);
  f.omega_mu_rabi = axis[1];
  CHECK(result.transmission[0][1] ==
        doctest::Approx(steady_transmission(f, decoherence_params(config),
                                            transmission_model(config)))
            .epsilon(1e-12));
}

TEST_CASE("detuning sweep is auto-phased onto X and symmetric for AM") {
  RunConfig config;
  config.tone.freq_hz = 500.0;
  config.tone.sample_rate_hz = 12000.0;
  std::vector<double> axis;
  for (const double khz : {-100.0, -60.0, 0.0, 60.0, 100.0}) {
    axis.push_back(kTwoPi * khz * 1e3);
  }

  const LockInSweepResult result = lockin_sweep(
      config, SweepAxis::kDetuning, axis, TransductionPath::kQuasiStatic);
  REQUIRE(result.points.size() == axis.size());

  double peak = 0.0;
  std::size_t peak_index = 0;
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    CHECK(result.points[i].axis_value == axis[i]);
    if (result.points[i].output.r > peak) {
      peak = result.points[i].output.r;
      peak_index = i;
    }
  }
  CHECK(peak > 0.0);
  // The sweep's global phase rotation puts the strongest point entirely in X.
  CHECK(std::abs(result.points[peak_index].output.y) <= 1e-9 * peak);
  CHECK(result.operating_detuning == axis[peak_index]);

  // Amplitude modulation response is even in detuning.
  for (std::size_t i = 0; i < axis.size() / 2; ++i) {
    const double r_neg = result.points[i].output.r;
    const double r_pos = result.points[axis.size() - 1 - i].output.r;
    CHECK(r_neg == doctest::Approx(r_pos).epsilon(1e-9));
  }
}

TEST_CASE("a power axis point equals the equivalent calibrated drive") {
  RunConfig base;
  base.tone.freq_hz = 500.0;
  base.tone.sample_rate_hz = 12000.0;

  const std::vector<double> power_axis = {0.0};  // dBm
  const LockInSweepResult via_power = lockin_sweep(
      base, SweepAxis::kPower, power_axis, TransductionPath::kQuasiStatic);

  RunConfig pinned = base;
  pinned.modulation.power_dbm = 0.0;
  const std::vector<double> detuning_axis = {atom_params(pinned).delta_mu};
  const LockInSweepResult via_detuning =
      lockin_sweep(pinned, SweepAxis::kDetuning, detuning_axis,
                   TransductionPath::kQuasiStatic);

  // Same physical operating point; R is invariant to the auto-phasing that
  // only the detuning sweep applies.
  CHECK(via_power.points[0].output.r ==
        doctest::Approx(via_detuning.points[0].output.r).epsilon(1e-12));
}

TEST_CASE("modulation-frequency sweeps re-select the operating detuning") {
  RunConfig config;
  config.modulation.mode = ModulationMode::kFm;
  config.tone.sample_rate_hz = 12000.0;
  const std::vector<double> axis = {200.0, 2000.0};  // Hz

  const LockInSweepResult result = lockin_sweep(
      config, SweepAxis::kModFrequency, axis, TransductionPath::kQuasiStatic);
  REQUIRE(result.points.size() == 2);
  // FM at the configured -5 kHz line center is nearly blind; the sweep must
  // move to a slope. The selected point stays inside the scanned window.
  CHECK(result.operating_detuning != atom_params(config).delta_mu);
  CHECK(std::abs(result.operating_detuning) <= kTwoPi * 300e3);
  CHECK(result.points[0].output.r > 0.0);
  CHECK(result.points[1].output.r > 0.0);
}
