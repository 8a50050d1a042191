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

#include "atomradio/spectrum.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>

#include "atomradio/types.hpp"

namespace atomradio {

namespace {

// FFTW's planner is not thread-safe; plan under a lock, execute freely.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<double> magnitude_spectrum(std::span<const double> samples) {
  const std::size_t n = samples.size();
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  std::vector<double> mag(out.size());
  for (std::size_t k = 0; k < out.size(); ++k) mag[k] = std::abs(out[k]);
  return mag;
}

}  // namespace

double highest_significant_frequency(std::span<const double> samples,
                                     double sample_rate,
                                     double rel_threshold) {
  const std::size_t n = samples.size();
  if (n < 2 || sample_rate <= 0.0) return 0.0;
  const std::vector<double> mag = magnitude_spectrum(samples);
  double peak_ac = 0.0;
  for (std::size_t k = 1; k < mag.size(); ++k)
    peak_ac = std::max(peak_ac, mag[k]);
  if (peak_ac <= 0.0 || peak_ac <= 1e-12 * mag[0]) return 0.0;
  std::size_t highest = 0;
  for (std::size_t k = 1; k < mag.size(); ++k) {
    if (mag[k] >= rel_threshold * peak_ac) highest = k;
  }
  return static_cast<double>(highest) * sample_rate / static_cast<double>(n);
}

double dominant_frequency(std::span<const double> samples,
                          double sample_rate) {
  const std::size_t n = samples.size();
  if (n < 4 || sample_rate <= 0.0) return 0.0;
  const std::vector<double> mag = magnitude_spectrum(samples);
  std::size_t best = 1;
  for (std::size_t k = 2; k < mag.size(); ++k) {
    if (mag[k] > mag[best]) best = k;
  }
  double delta = 0.0;
  if (best + 1 < mag.size() && best >= 2 && mag[best - 1] > 0.0 &&
      mag[best] > 0.0 && mag[best + 1] > 0.0) {
    const double lm = std::log(mag[best - 1]);
    const double lc = std::log(mag[best]);
    const double lp = std::log(mag[best + 1]);
    const double denom = lm - 2.0 * lc + lp;
    if (denom != 0.0) delta = 0.5 * (lm - lp) / denom;
  }
  return (static_cast<double>(best) + delta) * sample_rate /
         static_cast<double>(n);
}

double tone_amplitude(std::span<const double> samples, double sample_rate,
                      double freq_hz) {
  if (freq_hz <= 0.0 || sample_rate <= 0.0) {
    throw ConfigError("tone_amplitude needs positive frequency and rate");
  }
  const double duration =
      static_cast<double>(samples.size()) / sample_rate;
  const double periods = std::floor(duration * freq_hz);
  if (periods < 1.0) {
    throw InsufficientDurationError(
        "signal shorter than one period of the requested component");
  }
  const std::size_t used = std::min(
      samples.size(),
      static_cast<std::size_t>(std::llround(periods * sample_rate / freq_hz)));
  double c = 0.0;
  double s = 0.0;
  const double w = kTwoPi * freq_hz / sample_rate;
  for (std::size_t i = 0; i < used; ++i) {
    c += samples[i] * std::cos(w * static_cast<double>(i));
    s += samples[i] * std::sin(w * static_cast<double>(i));
  }
  return 2.0 * std::hypot(c, s) / static_cast<double>(used);
}

double total_harmonic_distortion(std::span<const double> samples,
                                 double sample_rate, double fundamental_hz,
                                 int max_harmonic) {
  const double fundamental =
      tone_amplitude(samples, sample_rate, fundamental_hz);
  if (!(fundamental > 0.0)) {
    throw NumericalError("no fundamental component to reference THD against");
  }
  double sum_sq = 0.0;
  for (int h = 2; h <= max_harmonic; ++h) {
    const double f = fundamental_hz * h;
    if (f >= 0.5 * sample_rate) break;
    const double a = tone_amplitude(samples, sample_rate, f);
    sum_sq += a * a;
  }
  return std::sqrt(sum_sq) / fundamental;
}

}  // namespace atomradio
