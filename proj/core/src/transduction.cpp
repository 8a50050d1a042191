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

#include "atomradio/transduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "atomradio/lindblad.hpp"
#include "atomradio/parallel.hpp"
#include "atomradio/rng.hpp"

namespace atomradio {

namespace {

AtomFieldParams with_drive(const AtomFieldParams& base, double omega,
                           double delta) {
  AtomFieldParams p = base;
  p.omega_mu_rabi = omega;
  p.delta_mu = delta;
  return p;
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double transmission_of_population(double population,
                                  const TransmissionModel& model) {
  return std::exp(-model.optical_depth * clamp01(population));
}

void check_trajectory(const CarrierTrajectory& trajectory) {
  if (trajectory.size() == 0) throw ConfigError("empty carrier trajectory");
  if (trajectory.omega_mu.size() != trajectory.delta_mu.size()) {
    throw ConfigError("carrier trajectory channel lengths differ");
  }
  if (!(trajectory.sample_rate > 0.0)) {
    throw ConfigError("carrier trajectory needs a sample rate");
  }
}

// Catmull-Rom weights at fractional position t in [0, 1).
void catmull_rom_weights(double t, double w[4]) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  w[0] = 0.5 * (-t3 + 2.0 * t2 - t);
  w[1] = 0.5 * (3.0 * t3 - 5.0 * t2 + 2.0);
  w[2] = 0.5 * (-3.0 * t3 + 4.0 * t2 + t);
  w[3] = 0.5 * (t3 - t2);
}

struct TableAxis {
  double lo = 0.0;
  double step = 1.0;
  int n = 1;

  static TableAxis over(double value_lo, double value_hi, int points) {
    TableAxis axis;
    const double span = value_hi - value_lo;
    const double scale =
        std::max({std::abs(value_lo), std::abs(value_hi), 1.0});
    if (span <= 1e-9 * scale) {
      axis.lo = 0.5 * (value_lo + value_hi);
      axis.n = 1;
      axis.step = 1.0;
      return axis;
    }
    // Pad so every queried point has full four-node support.
    const double pad = 0.05 * span + 2.0 * span / (points - 1);
    axis.lo = value_lo - pad;
    axis.n = points;
    axis.step = (value_hi + pad - axis.lo) / (points - 1);
    return axis;
  }

  double node(int i) const { return lo + step * i; }
};

// Bicubic steady-transmission table over the (omega, delta) rectangle a
// trajectory visits.
class SteadyTable {
 public:
  SteadyTable(const TableAxis& omega_axis, const TableAxis& delta_axis,
              const AtomFieldParams& base, const DecoherenceParams& rates,
              const TransmissionModel& model)
      : omega_(omega_axis), delta_(delta_axis) {
    values_.resize(static_cast<std::size_t>(omega_.n) * delta_.n);
    parallel_for(static_cast<std::size_t>(omega_.n), [&](std::size_t io) {
      for (int id = 0; id < delta_.n; ++id) {
        const auto fields = with_drive(base, omega_.node(static_cast<int>(io)),
                                       delta_.node(id));
        values_[io * delta_.n + id] =
            steady_transmission(fields, rates, model);
      }
    });
  }

  double eval(double omega, double delta) const {
    if (omega_.n == 1 && delta_.n == 1) return values_[0];
    if (omega_.n == 1) return eval_1d(delta_, delta, [&](int id) {
      return values_[static_cast<std::size_t>(id)];
    });
    if (delta_.n == 1) return eval_1d(omega_, omega, [&](int io) {
      return values_[static_cast<std::size_t>(io) * delta_.n];
    });

    const double uo = (omega - omega_.lo) / omega_.step;
    const double ud = (delta - delta_.lo) / delta_.step;
    const int io = clamp_base(uo, omega_.n);
    const int id = clamp_base(ud, delta_.n);
    double wo[4];
    double wd[4];
    catmull_rom_weights(uo - io, wo);
    catmull_rom_weights(ud - id, wd);
    double acc = 0.0;
    for (int a = 0; a < 4; ++a) {
      const int ro = std::clamp(io - 1 + a, 0, omega_.n - 1);
      for (int b = 0; b < 4; ++b) {
        const int rd = std::clamp(id - 1 + b, 0, delta_.n - 1);
        acc += wo[a] * wd[b] *
               values_[static_cast<std::size_t>(ro) * delta_.n + rd];
      }
    }
    return acc;
  }

 private:
  static int clamp_base(double u, int n) {
    return std::clamp(static_cast<int>(std::floor(u)), 0, n - 2);
  }

  template <typename Get>
  static double eval_1d(const TableAxis& axis, double x, const Get& get) {
    const double u = (x - axis.lo) / axis.step;
    const int i = clamp_base(u, axis.n);
    double w[4];
    catmull_rom_weights(u - i, w);
    double acc = 0.0;
    for (int a = 0; a < 4; ++a) {
      acc += w[a] * get(std::clamp(i - 1 + a, 0, axis.n - 1));
    }
    return acc;
  }

  TableAxis omega_;
  TableAxis delta_;
  std::vector<double> values_;
};

constexpr int kTableVerifyPoints = 100;
constexpr double kTableTolerance = 1e-4;
constexpr int kTableMaxPoints = 512;

TransmissionTrace quasi_static_by_table(const CarrierTrajectory& trajectory,
                                        const AtomFieldParams& baseline,
                                        const DecoherenceParams& rates,
                                        const TransmissionModel& model,
                                        const QuasiStaticOptions& options) {
  const auto [omega_lo_it, omega_hi_it] = std::minmax_element(
      trajectory.omega_mu.begin(), trajectory.omega_mu.end());
  const auto [delta_lo_it, delta_hi_it] = std::minmax_element(
      trajectory.delta_mu.begin(), trajectory.delta_mu.end());

  int points = std::max(8, options.table_points_per_axis);
  double worst = std::numeric_limits<double>::infinity();
  while (points <= kTableMaxPoints) {
    SteadyTable table(TableAxis::over(*omega_lo_it, *omega_hi_it, points),
                      TableAxis::over(*delta_lo_it, *delta_hi_it, points),
                      baseline, rates, model);

    // Spot-check against direct solves at random trajectory samples.
    Rng rng(options.verify_seed);
    worst = 0.0;
    for (int k = 0; k < kTableVerifyPoints; ++k) {
      const auto i = static_cast<std::size_t>(
          rng.uniform() * static_cast<double>(trajectory.size()));
      const std::size_t idx = std::min(i, trajectory.size() - 1);
      const double direct = steady_transmission(
          with_drive(baseline, trajectory.omega_mu[idx],
                     trajectory.delta_mu[idx]),
          rates, model);
      const double interp =
          table.eval(trajectory.omega_mu[idx], trajectory.delta_mu[idx]);
      worst = std::max(worst,
                       std::abs(interp - direct) / std::max(std::abs(direct),
                                                            1e-12));
    }
    if (worst <= kTableTolerance) {
      TransmissionTrace out;
      out.sample_rate = trajectory.sample_rate;
      out.samples.resize(trajectory.size());
      parallel_for(trajectory.size(), [&](std::size_t i) {
        out.samples[i] =
            table.eval(trajectory.omega_mu[i], trajectory.delta_mu[i]);
      });
      return out;
    }
    points *= 2;
  }
  std::ostringstream os;
  os << "interpolation table verification failed: worst relative error "
     << worst << " above " << kTableTolerance << " at " << kTableMaxPoints
     << " points per axis";
  throw TableAccuracyError(os.str());
}

}  // namespace

TransmissionTrace transduce_quasi_static(const CarrierTrajectory& trajectory,
                                         const AtomFieldParams& baseline,
                                         const DecoherenceParams& rates,
                                         const TransmissionModel& model,
                                         const QuasiStaticOptions& options) {
  check_trajectory(trajectory);
  if (options.use_table) {
    return quasi_static_by_table(trajectory, baseline, rates, model, options);
  }
  TransmissionTrace out;
  out.sample_rate = trajectory.sample_rate;
  out.samples.resize(trajectory.size());
  parallel_for(trajectory.size(), [&](std::size_t i) {
    out.samples[i] = steady_transmission(
        with_drive(baseline, trajectory.omega_mu[i], trajectory.delta_mu[i]),
        rates, model);
  });
  return out;
}

TransmissionTrace transduce_dynamic(const CarrierTrajectory& trajectory,
                                    const DensityMatrix& rho0,
                                    const AtomFieldParams& baseline,
                                    const DecoherenceParams& rates,
                                    const TransmissionModel& model,
                                    const DynamicOptions& options) {
  check_trajectory(trajectory);
  const double h = 1.0 / trajectory.sample_rate;
  const std::size_t n = trajectory.size();

  TransmissionTrace out;
  out.sample_rate = trajectory.sample_rate;
  out.samples.resize(n);

  Vector9c v = vec(rho0.matrix());
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix3c rho = unvec(v);
    const double trace_defect = std::abs(rho.trace() - Complex(1.0));
    if (!(trace_defect <= 1e-8)) {
      std::ostringstream os;
      os << "trace drift " << trace_defect << " at sample " << i
         << "; reduce dt_max or the trajectory step";
      throw TraceDriftError(os.str());
    }
    const Matrix3c herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix3c> eig(herm, Eigen::EigenvaluesOnly);
    const double min_eig = eig.eigenvalues().minCoeff();
    if (!(min_eig >= -1e-9)) {
      std::ostringstream os;
      os << "negative eigenvalue " << min_eig << " at sample " << i;
      throw PositivityError(os.str());
    }
    out.samples[i] =
        transmission_of_population(rho(kGround2, kGround2).real(), model);

    if (i + 1 == n) break;
    const auto fields =
        with_drive(baseline, trajectory.omega_mu[i], trajectory.delta_mu[i]);
    const double cap = options.dt_max > 0.0
                           ? options.dt_max
                           : recommended_dt_max(fields, rates);
    double steps_raw = std::ceil(h / cap);
    const std::uint64_t m =
        steps_raw >= 1.0 ? static_cast<std::uint64_t>(steps_raw) : 1;
    const double dt = h / static_cast<double>(m);
    const Matrix9c step =
        rk4_step_matrix(build_superoperator(fields, rates), dt);
    v = matrix_power(step, m) * v;
  }
  return out;
}

AudioSignal photodiode(const TransmissionTrace& transmission,
                       const PhotodiodeModel& model, std::uint64_t seed) {
  AudioSignal out;
  out.sample_rate = transmission.sample_rate;
  out.samples.resize(transmission.samples.size());
  if (model.noise_rms > 0.0) {
    Rng rng(seed);
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
      out.samples[i] = model.gain * transmission.samples[i] + model.offset +
                       model.noise_rms * rng.gaussian();
    }
  } else {
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
      out.samples[i] = model.gain * transmission.samples[i] + model.offset;
    }
  }
  return out;
}

namespace {

struct ExpFit {
  double tau = 0.0;
  double rms = std::numeric_limits<double>::infinity();
};

// Least-squares (a, b) for y = a + b*exp(-t/tau) at fixed tau; returns RMS.
double linear_fit_rms(std::span<const double> y, double dt, double tau) {
  const auto n = static_cast<double>(y.size());
  double se = 0.0;
  double see = 0.0;
  double sy = 0.0;
  double sye = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double e = std::exp(-(dt * static_cast<double>(j)) / tau);
    se += e;
    see += e * e;
    sy += y[j];
    sye += y[j] * e;
  }
  const double det = n * see - se * se;
  if (!(std::abs(det) > 1e-12 * n * see)) {
    return std::numeric_limits<double>::infinity();
  }
  const double b = (n * sye - se * sy) / det;
  const double a = (sy - b * se) / n;
  double ss = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double e = std::exp(-(dt * static_cast<double>(j)) / tau);
    const double r = y[j] - a - b * e;
    ss += r * r;
  }
  return std::sqrt(ss / n);
}

ExpFit fit_segment(std::span<const double> y, double dt) {
  // Coarse log-spaced scan, then golden-section refinement.
  const double lo = std::log(0.25 * dt);
  const double hi = std::log(4.0 * dt * static_cast<double>(y.size()));
  constexpr int kCoarse = 48;
  double best_u = lo;
  double best_rms = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kCoarse; ++k) {
    const double u = lo + (hi - lo) * k / (kCoarse - 1);
    const double rms = linear_fit_rms(y, dt, std::exp(u));
    if (rms < best_rms) {
      best_rms = rms;
      best_u = u;
    }
  }
  const double width = (hi - lo) / (kCoarse - 1);
  double a = best_u - width;
  double b = best_u + width;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = linear_fit_rms(y, dt, std::exp(c));
  double fd = linear_fit_rms(y, dt, std::exp(d));
  for (int it = 0; it < 60; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = linear_fit_rms(y, dt, std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = linear_fit_rms(y, dt, std::exp(d));
    }
  }
  ExpFit fit;
  fit.tau = std::exp(0.5 * (a + b));
  fit.rms = linear_fit_rms(y, dt, fit.tau);
  return fit;
}

}  // namespace

double extract_response_time(std::span<const double> step_response,
                             double sample_rate) {
  if (!(sample_rate > 0.0)) throw ConfigError("sample rate must be > 0");
  const std::size_t n = step_response.size();
  if (n < 4) throw NoEdgeError("trace too short for edge analysis");
  const double dt = 1.0 / sample_rate;

  std::vector<double> sorted(step_response.begin(), step_response.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted[static_cast<std::size_t>(
      std::llround(0.1 * static_cast<double>(n - 1)))];
  const double hi = sorted[static_cast<std::size_t>(
      std::llround(0.9 * static_cast<double>(n - 1)))];
  const double height = hi - lo;
  const double scale = std::max({std::abs(hi), std::abs(lo), 1.0});
  if (!(height > 1e-9 * scale)) {
    throw NoEdgeError("trace is flat; no step to analyze");
  }
  const double mid = 0.5 * (hi + lo);

  std::vector<std::size_t> crossings;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = step_response[i] - mid;
    const double b = step_response[i + 1] - mid;
    if ((a <= 0.0 && b > 0.0) || (a >= 0.0 && b < 0.0)) crossings.push_back(i);
  }
  if (crossings.empty()) {
    throw NoEdgeError("trace never crosses its mid level");
  }

  double best_tau = 0.0;
  double best_rel = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < crossings.size(); ++k) {
    const std::size_t start = crossings[k] + 1;
    const std::size_t stop =
        (k + 1 < crossings.size()) ? crossings[k + 1] : n - 1;
    if (stop <= start) continue;
    const bool rising = step_response[start] > mid;
    std::size_t extremum = start;
    for (std::size_t i = start; i <= stop; ++i) {
      const bool better = rising ? step_response[i] > step_response[extremum]
                                 : step_response[i] < step_response[extremum];
      if (better) extremum = i;
    }
    const std::size_t len = extremum - start + 1;
    // Already settled one sample after the crossing: edge faster than the
    // sampling, tau at most one period.
    if (std::abs(step_response[start] - step_response[extremum]) <
        0.02 * height) {
      if (best_rel == std::numeric_limits<double>::infinity() &&
          best_tau == 0.0) {
        best_tau = dt;
      }
      continue;
    }
    if (len < 10) continue;
    const auto segment = step_response.subspan(start, len);
    const ExpFit fit = fit_segment(segment, dt);
    const double rel = fit.rms / height;
    if (rel < best_rel) {
      best_rel = rel;
      best_tau = fit.tau;
    }
  }

  if (best_rel == std::numeric_limits<double>::infinity()) {
    if (best_tau > 0.0) return best_tau;  // instant-step degenerate case
    throw PoorFitError("no settling segment long enough to fit");
  }
  if (!(best_rel < 0.05)) {
    std::ostringstream os;
    os << "exponential fit residual " << best_rel
       << " of step height exceeds 0.05";
    throw PoorFitError(os.str());
  }
  return best_tau;
}

}  // namespace atomradio
