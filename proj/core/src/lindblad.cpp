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

#include "atomradio/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace atomradio {

namespace {

constexpr Complex kI{0.0, 1.0};

struct Jump {
  Matrix3c op;
  double rate;
};

// The five dissipation channels: two spontaneous branches out of |e>,
// bidirectional ground-state exchange at half the total relaxation rate
// each, and ground-coherence dephasing via diag(0, 1, -1)/sqrt(2).
std::array<Jump, 5> jump_operators(const DecoherenceParams& rates) {
  std::array<Jump, 5> jumps;
  for (auto& j : jumps) j.op = Matrix3c::Zero();
  jumps[0].op(kGround1, kExcited) = 1.0;
  jumps[0].rate = rates.gamma_e_g1;
  jumps[1].op(kGround2, kExcited) = 1.0;
  jumps[1].rate = rates.gamma_e_g2;
  jumps[2].op(kGround1, kGround2) = 1.0;
  jumps[2].rate = 0.5 * rates.gamma_ground_relax;
  jumps[3].op(kGround2, kGround1) = 1.0;
  jumps[3].rate = 0.5 * rates.gamma_ground_relax;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  jumps[4].op(kGround2, kGround2) = inv_sqrt2;
  jumps[4].op(kGround1, kGround1) = -inv_sqrt2;
  jumps[4].rate = rates.gamma_mw_dephase;
  return jumps;
}

Matrix9c kron(const Matrix3c& a, const Matrix3c& b) {
  Matrix9c k;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      k.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
    }
  }
  return k;
}

std::string format_defect(const char* what, double value, double bound) {
  std::ostringstream os;
  os << what << " " << value << " exceeds bound " << bound;
  return os.str();
}

double smallest_eigenvalue(const Matrix3c& m) {
  const Matrix3c herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix3c> solver(herm,
                                                 Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// Shared bookkeeping for both evolution paths.
struct SampleRecorder {
  const EvolveOptions& options;
  EvolutionResult result;

  explicit SampleRecorder(const EvolveOptions& opts) : options(opts) {
    result.min_eigenvalue = std::numeric_limits<double>::infinity();
  }

  // NaN-sticky extrema, so a blown-up integration is visible in the summary
  // even with validation off.
  static double worse_max(double acc, double v) {
    return (v > acc || std::isnan(v)) ? v : acc;
  }
  static double worse_min(double acc, double v) {
    return (v < acc || std::isnan(v)) ? v : acc;
  }

  void add(double t, const Matrix3c& rho) {
    const double trace_defect = std::abs(rho.trace() - Complex(1.0));
    const double herm_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const double min_eig = smallest_eigenvalue(rho);
    result.max_trace_defect = worse_max(result.max_trace_defect, trace_defect);
    result.max_hermiticity_defect =
        worse_max(result.max_hermiticity_defect, herm_defect);
    result.min_eigenvalue = worse_min(result.min_eigenvalue, min_eig);
    result.times.push_back(t);
    result.states.push_back(rho);
    if (options.validate) {
      // Negated comparisons so NaN (a blown-up integration) also trips.
      if (!(trace_defect <= options.trace_tol)) {
        throw TraceDriftError(
            format_defect("trace drift", trace_defect, options.trace_tol));
      }
      if (!(min_eig >= -options.eigenvalue_tol)) {
        throw PositivityError(format_defect("negative eigenvalue", min_eig,
                                            -options.eigenvalue_tol));
      }
    }
  }
};

std::uint64_t steps_for(double interval, double dt_cap) {
  if (!(interval > 0.0)) return 1;
  const double raw = std::ceil(interval / dt_cap);
  if (!(raw >= 1.0)) return 1;  // dt_cap may be infinite
  return static_cast<std::uint64_t>(raw);
}

}  // namespace

double max_rate(const AtomFieldParams& fields, const DecoherenceParams& rates) {
  double m = 0.0;
  m = std::max(m, std::abs(fields.omega_opt_rabi));
  m = std::max(m, std::abs(fields.omega_mu_rabi));
  m = std::max(m, std::abs(fields.delta_opt));
  m = std::max(m, std::abs(fields.delta_mu));
  m = std::max(m, rates.total_excited_decay());
  m = std::max(m, rates.gamma_ground_relax);
  m = std::max(m, rates.gamma_mw_dephase);
  return m;
}

double recommended_dt_max(const AtomFieldParams& fields,
                          const DecoherenceParams& rates, double safety) {
  const double rate = max_rate(fields, rates);
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return safety / rate;
}

DensityMatrix DensityMatrix::from_matrix(const Matrix3c& m) {
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (!(herm <= kHermitianTol)) {
    throw InvalidStateError(
        format_defect("hermiticity defect", herm, kHermitianTol));
  }
  const double trace_defect = std::abs(m.trace() - Complex(1.0));
  if (!(trace_defect <= kTraceTol)) {
    throw InvalidStateError(
        format_defect("trace defect", trace_defect, kTraceTol));
  }
  const double min_eig = smallest_eigenvalue(m);
  if (!(min_eig >= -kEigenvalueTol)) {
    throw InvalidStateError(
        format_defect("negative eigenvalue", min_eig, -kEigenvalueTol));
  }
  return DensityMatrix(m);
}

double DensityMatrix::min_eigenvalue() const { return smallest_eigenvalue(m_); }

Matrix3c build_hamiltonian(const AtomFieldParams& fields) {
  Matrix3c h = Matrix3c::Zero();
  h(kExcited, kExcited) = fields.delta_opt;
  h(kExcited, kGround2) = 0.5 * fields.omega_opt_rabi;
  h(kGround2, kExcited) = 0.5 * fields.omega_opt_rabi;
  h(kGround2, kGround1) = 0.5 * fields.omega_mu_rabi;
  h(kGround1, kGround2) = 0.5 * fields.omega_mu_rabi;
  h(kGround1, kGround1) = fields.delta_mu;
  return h;
}

Matrix3c liouvillian_apply(const Matrix3c& rho, const AtomFieldParams& fields,
                           const DecoherenceParams& rates) {
  const Matrix3c h = build_hamiltonian(fields);
  Matrix3c out = -kI * (h * rho - rho * h);
  for (const auto& jump : jump_operators(rates)) {
    if (jump.rate <= 0.0) continue;
    const Matrix3c jdj = jump.op.adjoint() * jump.op;
    out += jump.rate * (jump.op * rho * jump.op.adjoint() -
                        0.5 * (jdj * rho + rho * jdj));
  }
  return out;
}

Matrix9c build_superoperator(const AtomFieldParams& fields,
                             const DecoherenceParams& rates) {
  const Matrix3c h = build_hamiltonian(fields);
  const Matrix3c id = Matrix3c::Identity();
  Matrix9c l = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& jump : jump_operators(rates)) {
    if (jump.rate <= 0.0) continue;
    const Matrix3c jdj = jump.op.adjoint() * jump.op;
    l += jump.rate * (kron(jump.op.conjugate(), jump.op) -
                      0.5 * kron(id, jdj) - 0.5 * kron(jdj.transpose(), id));
  }
  return l;
}

Vector9c vec(const Matrix3c& m) {
  return Eigen::Map<const Vector9c>(m.data());
}

Matrix3c unvec(const Vector9c& v) {
  return Eigen::Map<const Matrix3c>(v.data());
}

Matrix9c rk4_step_matrix(const Matrix9c& liouvillian, double dt) {
  const Matrix9c a = liouvillian * dt;
  const Matrix9c a2 = a * a;
  return Matrix9c::Identity() + a + 0.5 * a2 + (1.0 / 6.0) * (a2 * a) +
         (1.0 / 24.0) * (a2 * a2);
}

Matrix9c matrix_power(const Matrix9c& base, std::uint64_t n) {
  Matrix9c result = Matrix9c::Identity();
  Matrix9c square = base;
  while (n > 0) {
    if (n & 1) result = square * result;
    n >>= 1;
    if (n > 0) square = square * square;
  }
  return result;
}

EvolutionResult evolve_constant(const DensityMatrix& initial,
                                const AtomFieldParams& fields,
                                const DecoherenceParams& rates, double t_span,
                                const EvolveOptions& options) {
  if (!(t_span >= 0.0)) throw ConfigError("evolution span must be >= 0");
  SampleRecorder recorder(options);
  recorder.add(0.0, initial.matrix());
  if (t_span == 0.0) return std::move(recorder.result);

  const int n_out = std::max(2, options.output_samples);
  const double dt_cap = options.dt_max > 0.0
                            ? options.dt_max
                            : recommended_dt_max(fields, rates);
  const double interval = t_span / (n_out - 1);
  const std::uint64_t m = steps_for(interval, dt_cap);
  const double dt = interval / static_cast<double>(m);

  const Matrix9c step = rk4_step_matrix(build_superoperator(fields, rates), dt);
  const Matrix9c per_interval = matrix_power(step, m);

  Vector9c v = vec(initial.matrix());
  for (int k = 1; k < n_out; ++k) {
    v = per_interval * v;
    recorder.add(k * interval, unvec(v));
  }
  return std::move(recorder.result);
}

EvolutionResult evolve(const DensityMatrix& initial, const DriveFn& fields_at,
                       const DecoherenceParams& rates, double t_span,
                       const EvolveOptions& options) {
  if (!(t_span >= 0.0)) throw ConfigError("evolution span must be >= 0");
  SampleRecorder recorder(options);
  recorder.add(0.0, initial.matrix());
  if (t_span == 0.0) return std::move(recorder.result);

  const int n_out = std::max(2, options.output_samples);
  const double dt_cap = options.dt_max > 0.0
                            ? options.dt_max
                            : recommended_dt_max(fields_at(0.0), rates);
  const double interval = t_span / (n_out - 1);

  Matrix3c rho = initial.matrix();
  for (int k = 0; k < n_out - 1; ++k) {
    const double t0 = k * interval;
    const std::uint64_t m = steps_for(interval, dt_cap);
    const double dt = interval / static_cast<double>(m);
    for (std::uint64_t s = 0; s < m; ++s) {
      const double t = t0 + s * dt;
      const AtomFieldParams f0 = fields_at(t);
      const AtomFieldParams fm = fields_at(t + 0.5 * dt);
      const AtomFieldParams f1 = fields_at(t + dt);
      const Matrix3c k1 = liouvillian_apply(rho, f0, rates);
      const Matrix3c k2 =
          liouvillian_apply(rho + (0.5 * dt) * k1, fm, rates);
      const Matrix3c k3 =
          liouvillian_apply(rho + (0.5 * dt) * k2, fm, rates);
      const Matrix3c k4 = liouvillian_apply(rho + dt * k3, f1, rates);
      rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    recorder.add((k + 1) * interval, rho);
  }
  return std::move(recorder.result);
}

}  // namespace atomradio
