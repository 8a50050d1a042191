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
#include <functional>
#include <vector>

#include "atomradio/types.hpp"

namespace atomradio {

/// Rotating-frame Hamiltonian of the driven lambda system (rad/s, hbar = 1),
/// with the drive phases absorbed so all couplings are real:
///
///   H = 1/2 * [ 2*delta_opt   omega_opt     0
///               omega_opt     0             omega_mu
///               0             omega_mu      2*delta_mu ]
Matrix3c build_hamiltonian(const AtomFieldParams& fields);

/// Right-hand side of the master equation, d(rho)/dt, applied to an arbitrary
/// matrix (linear in its argument). Dissipators cover the two spontaneous
/// branches out of |e>, bidirectional ground-state relaxation, and pure
/// dephasing of the ground-state coherence.
Matrix3c liouvillian_apply(const Matrix3c& rho, const AtomFieldParams& fields,
                           const DecoherenceParams& rates);

/// The same generator as a 9x9 matrix acting on column-stacked states,
/// vec(rho)[3*j + i] = rho(i, j).
Matrix9c build_superoperator(const AtomFieldParams& fields,
                             const DecoherenceParams& rates);

Vector9c vec(const Matrix3c& m);
Matrix3c unvec(const Vector9c& v);

/// One classical Runge-Kutta step for a constant generator, as a matrix:
/// P = I + A + A^2/2 + A^3/6 + A^4/24 with A = L*dt. Applying P is the
/// textbook RK4 update, so repeated application is RK4 with a fixed step.
Matrix9c rk4_step_matrix(const Matrix9c& liouvillian, double dt);

/// base^n by binary powering.
Matrix9c matrix_power(const Matrix9c& base, std::uint64_t n);

/// Default step ceiling: safety / max_rate, keeping the fastest rotation or
/// decay resolved by at least 1/safety steps per radian.
double recommended_dt_max(const AtomFieldParams& fields,
                          const DecoherenceParams& rates,
                          double safety = 0.1);

struct EvolveOptions {
  /// Hard cap on the integration step (s). Zero means "choose from the
  /// rates": 0.1 / max_rate evaluated at the initial fields. The value is
  /// honored as given; an absurdly large cap will blow up the integration
  /// and trip the integrity checks rather than being silently clamped.
  double dt_max = 0.0;
  /// Number of equally spaced sample times kept in the result, including the
  /// endpoints (minimum 2 for a nonzero span).
  int output_samples = 2;
  /// Check trace, Hermiticity, and positivity at every kept sample and throw
  /// TraceDriftError / PositivityError on violation.
  bool validate = true;
  double trace_tol = 1e-8;
  double eigenvalue_tol = 1e-9;
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<Matrix3c> states;
  double max_trace_defect = 0.0;
  double max_hermiticity_defect = 0.0;
  /// Smallest density-matrix eigenvalue seen at any kept sample.
  double min_eigenvalue = 1.0;

  const Matrix3c& final_state() const { return states.back(); }
};

/// Evolve under fixed fields for t_span seconds. Internally advances with a
/// repeated RK4 step matrix (binary powering), so cost grows with
/// log(step count), not step count.
EvolutionResult evolve_constant(const DensityMatrix& initial,
                                const AtomFieldParams& fields,
                                const DecoherenceParams& rates, double t_span,
                                const EvolveOptions& options = {});

using DriveFn = std::function<AtomFieldParams(double)>;

/// Evolve under time-dependent fields with stage-sampled RK4 (the generator
/// is rebuilt at the half and full step points of every step).
EvolutionResult evolve(const DensityMatrix& initial, const DriveFn& fields_at,
                       const DecoherenceParams& rates, double t_span,
                       const EvolveOptions& options = {});

}  // namespace atomradio
