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

#include <span>
#include <vector>

namespace atomradio {

/// Highest frequency (Hz) whose FFT bin magnitude is at least rel_threshold
/// of the strongest non-DC bin. Returns 0 for signals with no AC content
/// (all non-DC bins below 1e-12 of the DC magnitude or of the peak sample).
double highest_significant_frequency(std::span<const double> samples,
                                     double sample_rate,
                                     double rel_threshold = 0.01);

/// Amplitude of the component at freq_hz by quadrature projection over the
/// largest whole number of periods that fits the signal. Requires at least
/// one full period.
double tone_amplitude(std::span<const double> samples, double sample_rate,
                      double freq_hz);

/// Frequency (Hz) of the strongest non-DC FFT bin, refined by quadratic
/// interpolation of the log magnitudes around the peak.
double dominant_frequency(std::span<const double> samples, double sample_rate);

/// Total harmonic distortion: RMS of harmonics 2..max_harmonic over the
/// fundamental amplitude, harmonics above Nyquist skipped.
double total_harmonic_distortion(std::span<const double> samples,
                                 double sample_rate, double fundamental_hz,
                                 int max_harmonic = 10);

}  // namespace atomradio
