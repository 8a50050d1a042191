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

#include <Eigen/Dense>
#include <complex>
#include <numbers>

#include "atomradio/errors.hpp"

namespace atomradio {

using Complex = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;
using Matrix9c = Eigen::Matrix<Complex, 9, 9>;
using Vector9c = Eigen::Matrix<Complex, 9, 1>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Levels of the driven lambda system, in matrix index order. The optical
/// probe couples |g2> to |e|; the microwave field couples the two ground
/// states |g1> and |g2>.
enum Level : int {
  kExcited = 0,
  kGround2 = 1,
  kGround1 = 2,
};

/// Drive fields seen by the atoms. All values are angular (rad/s): Rabi rates
/// of the optical and microwave fields and their detunings from the
/// respective transitions.
struct AtomFieldParams {
  double omega_opt_rabi = 0.0;
  double delta_opt = 0.0;
  double omega_mu_rabi = 0.0;
  double delta_mu = 0.0;
};

/// Incoherent rates (1/s). gamma_e_g1 and gamma_e_g2 are the spontaneous
/// branches out of |e>; gamma_ground_relax is the total population exchange
/// rate between the ground states; gamma_mw_dephase is the pure dephasing
/// rate of the ground-state coherence.
struct DecoherenceParams {
  double gamma_e_g1 = 0.0;
  double gamma_e_g2 = 0.0;
  double gamma_ground_relax = 0.0;
  double gamma_mw_dephase = 0.0;

  double total_excited_decay() const { return gamma_e_g1 + gamma_e_g2; }
};

/// Largest rate (rad/s or 1/s) appearing in the generator; used to scale
/// integration steps and residual tolerances.
double max_rate(const AtomFieldParams& fields, const DecoherenceParams& rates);

/// Validated 3x3 density matrix. Construction enforces Hermiticity, unit
/// trace, and positivity up to numerical slack; the accessors below report
/// how far a matrix has drifted from those invariants.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenvalueTol = 1e-9;

  /// Pure state |level><level|.
  static DensityMatrix pure(Level level) {
    Matrix3c m = Matrix3c::Zero();
    m(level, level) = 1.0;
    return DensityMatrix(m);
  }

  /// Identity / 3.
  static DensityMatrix maximally_mixed() {
    return DensityMatrix(Matrix3c::Identity() / 3.0);
  }

  /// Validates and wraps an arbitrary matrix. Throws InvalidStateError if the
  /// matrix is further than the tolerances above from a physical state.
  static DensityMatrix from_matrix(const Matrix3c& m);

  const Matrix3c& matrix() const { return m_; }

  double population(Level level) const { return m_(level, level).real(); }
  Complex coherence(Level a, Level b) const { return m_(a, b); }

  double trace_defect() const { return std::abs(m_.trace() - Complex(1.0)); }
  double hermiticity_defect() const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  }
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;

 private:
  explicit DensityMatrix(const Matrix3c& m) : m_(m) {}
  Matrix3c m_;
};

}  // namespace atomradio
