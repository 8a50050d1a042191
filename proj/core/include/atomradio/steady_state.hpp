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

#include "atomradio/types.hpp"

namespace atomradio {

/// Beer-Lambert probe transmission through the vapor. The probe addresses the
/// |g2> -> |e> transition, so absorption scales with the |g2> population.
struct TransmissionModel {
  double optical_depth = 1.0;
};

/// Unique steady state of the generator: the null vector of the superoperator
/// with unit trace imposed, Hermitized and validated. Throws
/// DegenerateNullSpaceError when the null space has dimension above one, and
/// NumericalError when the residual ||L(rho)||_max exceeds
/// 1e-10 * max(max_rate, 1).
DensityMatrix solve_steady_state(const AtomFieldParams& fields,
                                 const DecoherenceParams& rates);

/// T = exp(-optical_depth * rho_g2g2), with the population clamped to [0, 1],
/// so T is always in (0, 1].
double transmission(const DensityMatrix& rho, const TransmissionModel& model);

/// Steady-state transmission at the given operating point.
double steady_transmission(const AtomFieldParams& fields,
                           const DecoherenceParams& rates,
                           const TransmissionModel& model);

/// First-order response of the steady transmission to the microwave drive,
/// evaluated by central differences with Richardson step-halving checks.
struct TransmissionSensitivities {
  double transmission = 0.0;
  /// dT / d(omega_mu_rabi), in 1/(rad/s).
  double d_omega = 0.0;
  /// dT / d(delta_mu), in 1/(rad/s).
  double d_delta = 0.0;
  /// Set when the halved-step estimate moved by more than 1% of scale,
  /// signalling that the finite difference may be inaccurate there.
  bool d_omega_warning = false;
  bool d_delta_warning = false;
};

TransmissionSensitivities transmission_sensitivities(
    const AtomFieldParams& fields, const DecoherenceParams& rates,
    const TransmissionModel& model);

}  // namespace atomradio
