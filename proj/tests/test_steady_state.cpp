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

#include "atomradio/steady_state.hpp"

#include <cmath>

#include "atomradio/lindblad.hpp"
#include "atomradio/rng.hpp"
#include "doctest.h"

using namespace atomradio;

namespace {

DecoherenceParams default_rates() {
  DecoherenceParams g;
  g.gamma_e_g1 = kTwoPi * 3035e3;
  g.gamma_e_g2 = kTwoPi * 3035e3;
  g.gamma_ground_relax = kTwoPi * 50.0;
  g.gamma_mw_dephase = kTwoPi * 100.0;
  return g;
}

AtomFieldParams default_fields() {
  AtomFieldParams f;
  f.omega_opt_rabi = kTwoPi * 35e3;
  f.omega_mu_rabi = kTwoPi * 74e3;
  f.delta_mu = -kTwoPi * 5e3;
  return f;
}

}  // namespace

TEST_CASE("steady state annihilates the generator") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    AtomFieldParams f;
    f.omega_opt_rabi = rng.uniform(kTwoPi * 1e3, kTwoPi * 300e3);
    f.omega_mu_rabi = rng.uniform(kTwoPi * 1e3, kTwoPi * 300e3);
    f.delta_opt = rng.uniform(-kTwoPi * 500e3, kTwoPi * 500e3);
    f.delta_mu = rng.uniform(-kTwoPi * 500e3, kTwoPi * 500e3);
    const DecoherenceParams g = default_rates();

    const DensityMatrix rho = solve_steady_state(f, g);
    const Matrix3c residual = liouvillian_apply(rho.matrix(), f, g);
    CHECK(residual.cwiseAbs().maxCoeff() <= 1e-9 * max_rate(f, g));
    CHECK(rho.trace_defect() <= 1e-12);
    CHECK(rho.min_eigenvalue() >= -1e-12);
  }
}

TEST_CASE("steady state matches long-time integration at the working point") {
  const AtomFieldParams f = default_fields();
  const DecoherenceParams g = default_rates();

  const DensityMatrix direct = solve_steady_state(f, g);
  const EvolutionResult run =
      evolve_constant(DensityMatrix::pure(kGround1), f, g, 50e-3, {});
  const double gap =
      (direct.matrix() - run.final_state()).cwiseAbs().maxCoeff();
  CHECK(gap <= 1e-7);
}

TEST_CASE("no unique steady state without dissipation") {
  AtomFieldParams f;
  f.omega_mu_rabi = kTwoPi * 10e3;
  const DecoherenceParams g;  // closed system: every H eigenstate is steady
  CHECK_THROWS_AS(solve_steady_state(f, g), DegenerateNullSpaceError);
}

TEST_CASE("an undriven ground doublet with only optical decay is degenerate") {
  // Spontaneous decay empties |e>, but nothing couples or relaxes the ground
  // states, so any ground mixture diagonal in the dressed basis is steady.
  AtomFieldParams f;
  f.omega_mu_rabi = kTwoPi * 40e3;
  DecoherenceParams g;
  g.gamma_e_g1 = kTwoPi * 3e6;
  g.gamma_e_g2 = kTwoPi * 3e6;
  CHECK_THROWS_AS(solve_steady_state(f, g), DegenerateNullSpaceError);
}

TEST_CASE("probe transmission follows the exponential absorption law") {
  TransmissionModel model;
  model.optical_depth = 1.0;
  CHECK(transmission(DensityMatrix::pure(kGround2), model) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(transmission(DensityMatrix::pure(kGround1), model) == 1.0);

  model.optical_depth = 2.5;
  CHECK(transmission(DensityMatrix::maximally_mixed(), model) ==
        doctest::Approx(std::exp(-2.5 / 3.0)).epsilon(1e-12));
}

TEST_CASE("transmission is even in microwave detuning on resonance") {
  AtomFieldParams f = default_fields();
  f.delta_opt = 0.0;
  const DecoherenceParams g = default_rates();
  TransmissionModel model;
  for (const double detuning_khz : {5.0, 40.0, 75.0, 150.0, 300.0}) {
    AtomFieldParams plus = f;
    AtomFieldParams minus = f;
    plus.delta_mu = kTwoPi * detuning_khz * 1e3;
    minus.delta_mu = -plus.delta_mu;
    const double tp = steady_transmission(plus, g, model);
    const double tm = steady_transmission(minus, g, model);
    CHECK(std::abs(tp - tm) <= 1e-12);
  }
}

TEST_CASE("sensitivities agree with an independent finite difference") {
  const AtomFieldParams f = default_fields();
  const DecoherenceParams g = default_rates();
  TransmissionModel model;

  const TransmissionSensitivities sens =
      transmission_sensitivities(f, g, model);
  CHECK(sens.transmission == doctest::Approx(steady_transmission(f, g, model))
                                 .epsilon(1e-12));
  CHECK_FALSE(sens.d_omega_warning);
  CHECK_FALSE(sens.d_delta_warning);

  // Coarse two-sided differences with steps the implementation does not use.
  const double h_omega = 0.003 * f.omega_mu_rabi;
  AtomFieldParams up = f;
  AtomFieldParams down = f;
  up.omega_mu_rabi += h_omega;
  down.omega_mu_rabi -= h_omega;
  const double d_omega = (steady_transmission(up, g, model) -
                          steady_transmission(down, g, model)) /
                         (2.0 * h_omega);
  CHECK(sens.d_omega == doctest::Approx(d_omega).epsilon(3e-3));

  const double h_delta = kTwoPi * 300.0;
  up = f;
  down = f;
  up.delta_mu += h_delta;
  down.delta_mu -= h_delta;
  const double d_delta = (steady_transmission(up, g, model) -
                          steady_transmission(down, g, model)) /
                         (2.0 * h_delta);
  CHECK(sens.d_delta == doctest::Approx(d_delta).epsilon(3e-3));
}

TEST_CASE("detuning sensitivity vanishes exactly with the microwave off") {
  AtomFieldParams f = default_fields();
  f.omega_mu_rabi = 0.0;
  const DecoherenceParams g = default_rates();
  const TransmissionSensitivities sens =
      transmission_sensitivities(f, g, TransmissionModel{});
  CHECK(sens.d_delta == 0.0);
}

TEST_CASE("sensitivities predict small transmission changes") {
  const AtomFieldParams f = default_fields();
  const DecoherenceParams g = default_rates();
  TransmissionModel model;
  const TransmissionSensitivities sens =
      transmission_sensitivities(f, g, model);

  AtomFieldParams nudged = f;
  nudged.omega_mu_rabi *= 1.0 + 1e-4;
  const double predicted =
      sens.transmission + sens.d_omega * (nudged.omega_mu_rabi - f.omega_mu_rabi);
  const double actual = steady_transmission(nudged, g, model);
  CHECK(std::abs(actual - predicted) <=
        1e-2 * std::abs(actual - sens.transmission));
}
