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

#include "atomradio/lockin.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace atomradio {

namespace {

// Cascade of identical exact-decay one-pole stages.
class FilterCascade {
 public:
  FilterCascade(int order, double alpha, double initial)
      : alpha_(alpha), state_(static_cast<std::size_t>(order), initial) {}

  double push(double x) {
    for (double& y : state_) {
      y = x + (y - x) * alpha_;
      x = y;
    }
    return x;
  }

 private:
  double alpha_;
  std::vector<double> state_;
};

}  // namespace

LockInOutput demodulate(const AudioSignal& signal, const LockInConfig& config) {
  if (signal.samples.empty()) throw ConfigError("lock-in input is empty");
  if (!(signal.sample_rate > 0.0)) {
    throw ConfigError("lock-in input needs a sample rate");
  }
  if (!(config.reference_freq > 0.0)) {
    throw ConfigError("lock-in reference frequency must be > 0");
  }
  if (config.filter_order < 1) {
    throw ConfigError("lock-in filter order must be >= 1");
  }

  const double fs = signal.sample_rate;
  const double f = config.reference_freq;
  const double tau =
      config.time_constant > 0.0 ? config.time_constant : 10.0 / (kTwoPi * f);
  const std::size_t n = signal.samples.size();

  const auto settle =
      static_cast<std::size_t>(std::ceil(10.0 * tau * fs));
  const double after_settle =
      (n > settle) ? static_cast<double>(n - settle) / fs : 0.0;
  const double periods_available = after_settle * f;
  if (periods_available < 1.0) {
    std::ostringstream os;
    os << "signal of " << signal.duration() << " s leaves less than one "
       << "reference period after the 10-time-constant settling ("
       << 10.0 * tau << " s)";
    throw InsufficientDurationError(os.str());
  }

  const double w = kTwoPi * f / fs;
  const double phi = config.reference_phase;
  auto mix_x = [&](std::size_t i) {
    return 2.0 * signal.samples[i] * std::cos(w * static_cast<double>(i) + phi);
  };
  auto mix_y = [&](std::size_t i) {
    return 2.0 * signal.samples[i] * std::sin(w * static_cast<double>(i) + phi);
  };

  // Cycle mean of the mixer outputs, used as the filter starting state.
  const std::size_t period_samples = std::min<std::size_t>(
      n, std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(fs / f))));
  double x0 = 0.0;
  double y0 = 0.0;
  for (std::size_t i = 0; i < period_samples; ++i) {
    x0 += mix_x(i);
    y0 += mix_y(i);
  }
  x0 /= static_cast<double>(period_samples);
  y0 /= static_cast<double>(period_samples);

  const double alpha = std::exp(-1.0 / (tau * fs));
  FilterCascade fx(config.filter_order, alpha, x0);
  FilterCascade fy(config.filter_order, alpha, y0);

  // The mixer converts the signal's DC level into a full-scale component at
  // the reference frequency, so each stage runs a periodic ripple orbit, not
  // a constant. A cascade started at the cycle mean rings toward that orbit
  // for tens of time constants, and the surviving tail biases the averaged
  // quadratures. Warm the stages on the first cycle until they sit on its
  // orbit; the record's own settling window then only has to absorb the
  // signal's transient, not the filter's.
  {
    std::vector<double> wx(period_samples);
    std::vector<double> wy(period_samples);
    for (std::size_t i = 0; i < period_samples; ++i) {
      wx[i] = mix_x(i);
      wy[i] = mix_y(i);
    }
    const auto warm_cycles = static_cast<std::size_t>(std::ceil(
        25.0 * tau * fs / static_cast<double>(period_samples)));
    for (std::size_t cycle = 0; cycle < warm_cycles; ++cycle) {
      for (std::size_t i = 0; i < period_samples; ++i) {
        fx.push(wx[i]);
        fy.push(wy[i]);
      }
    }
  }

  std::vector<double> filt_x(n);
  std::vector<double> filt_y(n);
  for (std::size_t i = 0; i < n; ++i) {
    filt_x[i] = fx.push(mix_x(i));
    filt_y[i] = fy.push(mix_y(i));
  }

  // Average the settled tail over a whole number of reference periods,
  // aligned to the end of the signal.
  const auto whole_periods = std::floor(periods_available);
  auto count = static_cast<std::size_t>(std::llround(whole_periods * fs / f));
  count = std::min(count, n);
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = n - count; i < n; ++i) {
    sx += filt_x[i];
    sy += filt_y[i];
  }

  LockInOutput out;
  out.x = sx / static_cast<double>(count);
  out.y = sy / static_cast<double>(count);
  out.r = std::hypot(out.x, out.y);
  return out;
}

}  // namespace atomradio
