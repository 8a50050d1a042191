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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "atomradio/lindblad.hpp"

namespace atomradio {

namespace {

// Relative singular-value cutoff for counting the Liouvillian null space.
constexpr double kNullSpaceCutoff = 1e-10;

int liouvillian_nullity(const Matrix9c& l) {
  Eigen::JacobiSVD<Matrix9c> svd(l);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv(0);
  if (sigma_max <= 0.0) return 9;
  int nullity = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) <= kNullSpaceCutoff * sigma_max) ++nullity;
  }
  return nullity;
}

}  // namespace

DensityMatrix solve_steady_state(const AtomFieldParams& fields,
                                 const DecoherenceParams& rates) {
  const Matrix9c l = build_superoperator(fields, rates);
  const double rate_scale = max_rate(fields, rates);
  const double scale = std::max(rate_scale, 1.0);

  // Trace-preservation makes rows {0, 4, 8} of L sum to zero, so replacing
  // one of them with the trace constraint never discards information. The
  // generator rows are scaled to O(1) so the trace row and the pivot-based
  // rank test below see a uniformly scaled system.
  Matrix9c a = l / scale;
  a.row(0).setZero();
  a(0, 0) = 1.0;
  a(0, 4) = 1.0;
  a(0, 8) = 1.0;
  Vector9c b = Vector9c::Zero();
  b(0) = 1.0;

  Eigen::FullPivLU<Matrix9c> lu(a);
  lu.setThreshold(1e-12);
  if (lu.rank() < 9) {
    // A consistent singular system still solves cleanly (the LU just picks
    // one kernel vector), so non-uniqueness must be caught here, not from
    // the residual.
    const int nullity = liouvillian_nullity(l);
    if (nullity != 1) {
      std::ostringstream os;
      os << "Liouvillian null space has dimension " << nullity
         << "; no unique steady state (all decoherence off?)";
      throw DegenerateNullSpaceError(os.str());
    }
    throw NumericalError(
        "steady-state system is numerically rank-deficient; the slowest "
        "relaxation is below the solver's resolution");
  }
  Vector9c v = lu.solve(b);

  const double residual_bound = 1e-10 * std::max(rate_scale, 1.0);

  const double solve_residual = (l * v).cwiseAbs().maxCoeff();
  if (!(solve_residual <= residual_bound) ||
      !(std::abs((v(0) + v(4) + v(8)).real() - 1.0) <= 1e-8)) {
    // Either no unique steady state exists or the solve failed; tell which.
    const int nullity = liouvillian_nullity(l);
    if (nullity != 1) {
      std::ostringstream os;
      os << "Liouvillian null space has dimension " << nullity
         << "; no unique steady state (all decoherence off?)";
      throw DegenerateNullSpaceError(os.str());
    }
    std::ostringstream os;
    os << "steady-state residual " << solve_residual << " exceeds bound "
       << residual_bound;
    throw NumericalError(os.str());
  }

  Matrix3c rho = unvec(v);
  rho = 0.5 * (rho + rho.adjoint().eval());
  rho /= rho.trace().real();

  const double final_residual = (l * vec(rho)).cwiseAbs().maxCoeff();
  if (!(final_residual <= residual_bound)) {
    std::ostringstream os;
    os << "steady-state residual " << final_residual << " exceeds bound "
       << residual_bound;
    throw NumericalError(os.str());
  }
  return DensityMatrix::from_matrix(rho);
}

double transmission(const DensityMatrix& rho, const TransmissionModel& model) {
  const double population =
      std::clamp(rho.population(kGround2), 0.0, 1.0);
  return std::exp(-model.optical_depth * population);
}

double steady_transmission(const AtomFieldParams& fields,
                           const DecoherenceParams& rates,
                           const TransmissionModel& model) {
  return transmission(solve_steady_state(fields, rates), model);
}

namespace {

double central_difference(const AtomFieldParams& fields,
                          const DecoherenceParams& rates,
                          const TransmissionModel& model, double h,
                          double AtomFieldParams::*member) {
  AtomFieldParams plus = fields;
  AtomFieldParams minus = fields;
  plus.*member += h;
  minus.*member -= h;
  return (steady_transmission(plus, rates, model) -
          steady_transmission(minus, rates, model)) /
         (2.0 * h);
}

// Finite-difference noise floor in derivative units, used so that a true
// zero derivative does not trip the step-halving warning.
double fd_noise_floor(double h) { return 1e-13 / h; }

}  // namespace

TransmissionSensitivities transmission_sensitivities(
    const AtomFieldParams& fields, const DecoherenceParams& rates,
    const TransmissionModel& model) {
  TransmissionSensitivities out;
  out.transmission = steady_transmission(fields, rates, model);

  const double floor = kTwoPi * 1.0;
  {
    const double h = std::max(1e-4 * std::abs(fields.omega_mu_rabi), floor);
    const double d = central_difference(fields, rates, model, h,
                                        &AtomFieldParams::omega_mu_rabi);
    const double d_half = central_difference(fields, rates, model, 0.5 * h,
                                             &AtomFieldParams::omega_mu_rabi);
    out.d_omega = d;
    out.d_omega_warning =
        std::abs(d - d_half) >
        0.01 * std::max(std::abs(d_half), fd_noise_floor(h));
  }
  if (fields.omega_mu_rabi == 0.0) {
    // No microwave coupling: the detuning only phases a decoupled level, so
    // T cannot depend on it.
    out.d_delta = 0.0;
    out.d_delta_warning = false;
  } else {
    const double h = std::max(1e-4 * std::abs(fields.delta_mu), floor);
    const double d = central_difference(fields, rates, model, h,
                                        &AtomFieldParams::delta_mu);
    const double d_half = central_difference(fields, rates, model, 0.5 * h,
                                             &AtomFieldParams::delta_mu);
    out.d_delta = d;
    out.d_delta_warning =
        std::abs(d - d_half) >
        0.01 * std::max(std::abs(d_half), fd_noise_floor(h));
  }
  return out;
}

}  // namespace atomradio
