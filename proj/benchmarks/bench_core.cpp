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

#include <benchmark/benchmark.h>

#include "atomradio/config.hpp"
#include "atomradio/lindblad.hpp"
#include "atomradio/lockin.hpp"
#include "atomradio/steady_state.hpp"
#include "atomradio/transduction.hpp"

namespace {

using namespace atomradio;

AtomFieldParams bench_fields() {
  AtomFieldParams f;
  f.omega_opt_rabi = kTwoPi * 50e3;
  f.omega_mu_rabi = kTwoPi * 74e3;
  f.delta_mu = -kTwoPi * 5e3;
  return f;
}

DecoherenceParams bench_rates() { return decoherence_params(RunConfig{}); }

void BM_BuildSuperoperator(benchmark::State& state) {
  const AtomFieldParams fields = bench_fields();
  const DecoherenceParams rates = bench_rates();
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_superoperator(fields, rates));
  }
}
BENCHMARK(BM_BuildSuperoperator);

void BM_StepMatrix(benchmark::State& state) {
  const Matrix9c l = build_superoperator(bench_fields(), bench_rates());
  const double dt = recommended_dt_max(bench_fields(), bench_rates());
  for (auto _ : state) {
    benchmark::DoNotOptimize(rk4_step_matrix(l, dt));
  }
}
BENCHMARK(BM_StepMatrix);

// One 10 ms constant-drive propagation, including the propagator powering.
void BM_Evolve10ms(benchmark::State& state) {
  const AtomFieldParams fields = bench_fields();
  const DecoherenceParams rates = bench_rates();
  const DensityMatrix rho0 = DensityMatrix::pure(Level::kGround1);
  EvolveOptions options;
  options.validate = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        evolve_constant(rho0, fields, rates, 10e-3, options));
  }
}
BENCHMARK(BM_Evolve10ms);

void BM_SteadyState(benchmark::State& state) {
  const AtomFieldParams fields = bench_fields();
  const DecoherenceParams rates = bench_rates();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_steady_state(fields, rates));
  }
}
BENCHMARK(BM_SteadyState);

void BM_Sensitivities(benchmark::State& state) {
  const AtomFieldParams fields = bench_fields();
  const DecoherenceParams rates = bench_rates();
  const TransmissionModel model;
  for (auto _ : state) {
    benchmark::DoNotOptimize(transmission_sensitivities(fields, rates, model));
  }
}
BENCHMARK(BM_Sensitivities);

void BM_Demodulate(benchmark::State& state) {
  AudioSignal signal;
  signal.sample_rate = 48000.0;
  signal.samples.resize(100000);
  for (std::size_t i = 0; i < signal.samples.size(); ++i) {
    signal.samples[i] = std::sin(kTwoPi * 500.0 * i / signal.sample_rate);
  }
  LockInConfig config;
  config.reference_freq = 500.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(demodulate(signal, config));
  }
}
BENCHMARK(BM_Demodulate);

void BM_DynamicTransduce(benchmark::State& state) {
  const AtomFieldParams fields = bench_fields();
  const DecoherenceParams rates = bench_rates();
  const TransmissionModel model;
  CarrierTrajectory traj;
  traj.sample_rate = 8000.0;
  const std::size_t n = 1000;
  traj.omega_mu.resize(n);
  traj.delta_mu.assign(n, fields.delta_mu);
  for (std::size_t i = 0; i < n; ++i) {
    traj.omega_mu[i] = fields.omega_mu_rabi *
                       (1.0 + 1e-3 * std::sin(kTwoPi * 50.0 * i / 8000.0));
  }
  const DensityMatrix rho0 = solve_steady_state(fields, rates);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        transduce_dynamic(traj, rho0, fields, rates, model));
  }
}
BENCHMARK(BM_DynamicTransduce);

}  // namespace

BENCHMARK_MAIN();
