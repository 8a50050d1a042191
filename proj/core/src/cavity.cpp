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

#include "atomradio/cavity.hpp"

#include <cmath>
#include <sstream>

#include "atomradio/spectrum.hpp"

namespace atomradio {

Complex CavityParams::field_gain(double delta) const {
  return 1.0 / Complex(1.0, 2.0 * delta / kappa());
}

double input_power_to_rabi(double power_dbm, const CavityParams& cavity) {
  // 10^(P/20) is sqrt of the power in mW, so this is the square-root law
  // anchored at 0 dBm = 1 mW.
  return cavity.rabi_per_sqrt_mw * std::pow(10.0, power_dbm / 20.0);
}

CarrierTrajectory cavity_transfer(const CarrierTrajectory& input,
                                  const CavityParams& cavity) {
  if (input.size() == 0) throw ConfigError("empty carrier trajectory");
  if (input.omega_mu.size() != input.delta_mu.size()) {
    throw ConfigError("carrier trajectory channel lengths differ");
  }
  const double fs = input.sample_rate;
  if (!(fs > 0.0)) throw ConfigError("carrier trajectory needs a sample rate");

  const double content = std::max(
      highest_significant_frequency(input.omega_mu, fs),
      highest_significant_frequency(input.delta_mu, fs));
  if (fs < 10.0 * content) {
    std::ostringstream os;
    os << "sample rate " << fs << " Hz is below 10x the trajectory's "
       << "spectral content (" << content << " Hz); raise the rate";
    throw SampleRateError(os.str());
  }

  CarrierTrajectory out;
  out.sample_rate = fs;
  out.delta_mu = input.delta_mu;
  out.omega_mu.resize(input.size());

  // Quasi-static resonance weight at the instantaneous carrier offset, then
  // the cavity's field pole at kappa/2 smoothing the resulting envelope.
  const double alpha = std::exp(-0.5 * cavity.kappa() / fs);
  double y = 0.0;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const double weighted =
        input.omega_mu[i] * std::abs(cavity.field_gain(input.delta_mu[i]));
    y = (i == 0) ? weighted : weighted + (y - weighted) * alpha;
    out.omega_mu[i] = y;
  }
  return out;
}

}  // namespace atomradio
