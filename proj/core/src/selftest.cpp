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

#include "atomradio/selftest.hpp"

#include <cmath>
#include <sstream>

#include "atomradio/lindblad.hpp"
#include "atomradio/rng.hpp"
#include "atomradio/spectrum.hpp"
#include "atomradio/steady_state.hpp"
#include "atomradio/transduction.hpp"

namespace atomradio {

namespace {

constexpr double kTraceBound = 1e-8;
constexpr double kHermBound = 1e-10;
constexpr double kEigenBound = -1e-9;
constexpr double kSteadyBound = 1e-6;
constexpr double kResponseBound = 0.02;

AtomFieldParams random_fields(Rng& rng) {
  AtomFieldParams f;
  f.omega_opt_rabi = rng.uniform(kTwoPi * 1e3, kTwoPi * 300e3);
  f.omega_mu_rabi = rng.uniform(kTwoPi * 1e3, kTwoPi * 300e3);
  f.delta_opt = rng.uniform(-kTwoPi * 500e3, kTwoPi * 500e3);
  f.delta_mu = rng.uniform(-kTwoPi * 500e3, kTwoPi * 500e3);
  return f;
}

DensityMatrix random_state(Rng& rng) {
  Matrix3c g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      g(i, j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
  }
  Matrix3c rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::from_matrix(rho);
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

bool worse_than(double value, double bound) {
  return !(value <= bound);  // NaN counts as a failure
}

SelfTestCheck check_evolution_integrity(const RunConfig& config) {
  SelfTestCheck check;
  check.name = "evolution-integrity";
  const DecoherenceParams rates = decoherence_params(config);
  Rng rng(config.seed);

  double worst_trace = 0.0;
  double worst_herm = 0.0;
  double worst_eig = 1.0;
  try {
    for (int set = 0; set < 25; ++set) {
      const AtomFieldParams fields = random_fields(rng);
      const DensityMatrix rho0 = random_state(rng);
      EvolveOptions options;
      options.dt_max = config.solver.dt_max_s;
      options.output_samples = 21;
      options.validate = false;
      const EvolutionResult run =
          evolve_constant(rho0, fields, rates, 2e-3, options);
      worst_trace = std::max(worst_trace, run.max_trace_defect);
      worst_herm = std::max(worst_herm, run.max_hermiticity_defect);
      worst_eig = std::min(worst_eig, run.min_eigenvalue);
      if (std::isnan(run.max_trace_defect) || std::isnan(run.min_eigenvalue)) {
        worst_trace = run.max_trace_defect;
        worst_eig = run.min_eigenvalue;
        break;
      }
    }
  } catch (const Error& e) {
    check.detail = e.what();
    return check;
  }

  check.passed = !worse_than(worst_trace, kTraceBound) &&
                 !worse_than(worst_herm, kHermBound) &&
                 !(worst_eig < kEigenBound) && !std::isnan(worst_eig);
  check.detail = "trace drift " + sci(worst_trace) + " (bound " +
                 sci(kTraceBound) + "), hermiticity " + sci(worst_herm) +
                 " (bound " + sci(kHermBound) + "), min eigenvalue " +
                 sci(worst_eig) + " (bound " + sci(kEigenBound) + ")";
  return check;
}

SelfTestCheck check_steady_vs_integration(const RunConfig& config,
                                          bool& steady_ok) {
  SelfTestCheck check;
  check.name = "steady-vs-integration";
  const DecoherenceParams rates = decoherence_params(config);
  Rng rng(config.seed + 1);

  double slowest = 0.0;
  for (double rate : {rates.total_excited_decay(), rates.gamma_ground_relax,
                      rates.gamma_mw_dephase}) {
    if (rate > 0.0 && (slowest == 0.0 || rate < slowest)) slowest = rate;
  }

  double worst = 0.0;
  try {
    for (int set = 0; set < 10; ++set) {
      const AtomFieldParams fields = random_fields(rng);
      const DensityMatrix steady = solve_steady_state(fields, rates);
      // Unreachable with zero dissipation: the solve above throws first.
      const double t_span = slowest > 0.0 ? 100.0 / slowest : 1.0;
      EvolveOptions options;
      options.dt_max = config.solver.dt_max_s;
      options.validate = false;
      const EvolutionResult run = evolve_constant(
          DensityMatrix::maximally_mixed(), fields, rates, t_span, options);
      const Matrix3c diff = run.final_state().matrix() - steady.matrix();
      const double err = diff.cwiseAbs().maxCoeff();
      if (err > worst || std::isnan(err)) worst = err;
      if (std::isnan(err)) break;
    }
  } catch (const Error& e) {
    check.detail = e.what();
    steady_ok = false;
    return check;
  }

  steady_ok = true;
  check.passed = !worse_than(worst, kSteadyBound);
  check.detail = "max elementwise gap " + sci(worst) + " (bound " +
                 sci(kSteadyBound) + ") over 10 random drive sets";
  return check;
}

/// Modulates one quadrature-depth tone through the dynamic path (no cavity)
/// and compares the recovered AC amplitude with the first-order prediction
/// from the steady-state slope.
double small_signal_relative_error(const RunConfig& config,
                                   ModulationMode mode) {
  const AtomFieldParams base = atom_params(config);
  const DecoherenceParams rates = decoherence_params(config);
  const TransmissionModel model = transmission_model(config);

  const double f_m = 50.0;
  const double fs = 2000.0;
  const double duration = 0.26;
  const AudioSignal tone = make_tone(f_m, 1.0, Waveform::kSine, duration, fs);

  ModulationConfig mod;
  mod.mode = mode;
  mod.m_am = 1e-3;
  mod.m_fm = kTwoPi * 40.0;
  mod.carrier_rabi_0 = base.omega_mu_rabi;
  mod.carrier_detuning_0 = base.delta_mu;
  const CarrierTrajectory traj = encode(tone, mod);

  const TransmissionSensitivities sens =
      transmission_sensitivities(base, rates, model);
  const double predicted =
      mode == ModulationMode::kAm
          ? std::abs(sens.d_omega) * base.omega_mu_rabi * mod.m_am
          : std::abs(sens.d_delta) * mod.m_fm;
  if (!(predicted > 1e-12)) {
    throw NumericalError(
        "operating point has no first-order response to compare against");
  }

  AtomFieldParams first = base;
  first.omega_mu_rabi = traj.omega_mu.front();
  first.delta_mu = traj.delta_mu.front();
  const DensityMatrix rho0 = solve_steady_state(first, rates);
  DynamicOptions options;
  options.dt_max = config.solver.dt_max_s;
  const TransmissionTrace trace =
      transduce_dynamic(traj, rho0, base, rates, model, options);

  const auto skip = static_cast<std::size_t>(0.1 * fs);
  const std::span<const double> tail(trace.samples.data() + skip,
                                     trace.samples.size() - skip);
  const double measured = tone_amplitude(tail, fs, f_m);
  return std::abs(measured / predicted - 1.0);
}

SelfTestCheck check_small_signal(const RunConfig& config, bool steady_ok) {
  SelfTestCheck check;
  check.name = "small-signal-response";
  if (!steady_ok) {
    check.skipped = true;
    check.detail = "requires a unique steady state";
    return check;
  }
  try {
    const double am = small_signal_relative_error(config, ModulationMode::kAm);
    const double fm = small_signal_relative_error(config, ModulationMode::kFm);
    check.passed = !worse_than(am, kResponseBound) &&
                   !worse_than(fm, kResponseBound);
    check.detail = "relative gap vs first-order model: AM " + sci(am) +
                   ", FM " + sci(fm) + " (bound " + sci(kResponseBound) + ")";
  } catch (const DegenerateNullSpaceError& e) {
    check.skipped = true;
    check.detail = std::string("requires a unique steady state: ") + e.what();
  } catch (const Error& e) {
    check.detail = e.what();
  }
  return check;
}

}  // namespace

SelfTestReport run_selftest(const RunConfig& config) {
  SelfTestReport report;
  report.checks.push_back(check_evolution_integrity(config));
  bool steady_ok = false;
  report.checks.push_back(check_steady_vs_integration(config, steady_ok));
  report.checks.push_back(check_small_signal(config, steady_ok));
  return report;
}

}  // namespace atomradio
