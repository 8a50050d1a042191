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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "atomradio/cavity.hpp"
#include "atomradio/lockin.hpp"
#include "atomradio/modulation.hpp"
#include "atomradio/steady_state.hpp"
#include "atomradio/transduction.hpp"
#include "atomradio/types.hpp"

namespace atomradio {

/// Declarative run configuration. Values are stored in the document's units
/// (ordinary frequencies in kHz or Hz, powers in dBm) and converted to
/// internal angular units on demand, so parse(serialize(c)) reproduces c
/// exactly. Unknown keys are rejected with a path diagnostic; every field
/// below is also the documented default.
struct RunConfig {
  std::uint64_t seed = 1;

  struct Atom {
    /// Probe Rabi rate / 2*pi (kHz). Sets the optical pumping rate, and with
    /// it the transduction bandwidth and square-wave response time.
    double omega_opt_rabi_khz = 35.0;
    /// Probe detuning / 2*pi (kHz).
    double delta_opt_khz = 0.0;
    /// Microwave Rabi rate / 2*pi (kHz), used unless modulation.power_dbm
    /// is set.
    double omega_mu_rabi_khz = 74.0;
    /// Microwave detuning / 2*pi (kHz).
    double delta_mu_khz = -5.0;
  } atom;

  struct Decoherence {
    /// Spontaneous decay branches / 2*pi (kHz).
    double gamma_e_g1_khz = 3035.0;
    double gamma_e_g2_khz = 3035.0;
    /// Ground-state population exchange / 2*pi (kHz).
    double gamma_ground_relax_khz = 0.05;
    /// Ground-state pure dephasing / 2*pi (kHz).
    double gamma_mw_dephase_khz = 0.1;
  } decoherence;

  struct Cavity {
    double f_resonance_ghz = 6.834682610;
    double quality_factor = 27000.0;
    /// Power-to-Rabi calibration / 2*pi (kHz per sqrt(mW)).
    double rabi_per_sqrt_mw_khz = 58.6;
  } cavity;

  struct Modulation {
    ModulationMode mode = ModulationMode::kAm;
    /// AM index per volt (1/V).
    double m_am_per_volt = 0.15;
    /// FM deviation per volt (kHz/V, ordinary frequency).
    double m_fm_khz_per_volt = 40.0;
    /// When set, the carrier Rabi rate comes from the cavity power
    /// calibration at this drive power instead of atom.omega_mu_rabi_khz.
    std::optional<double> power_dbm;
  } modulation;

  struct Transmission {
    double optical_depth = 1.0;
  } transmission;

  struct Photodiode {
    double gain_v = 1.0;
    double offset_v = 0.0;
    double noise_rms_v = 0.0;
  } photodiode;

  struct LockIn {
    /// 0 tracks the modulation tone frequency.
    double reference_freq_hz = 0.0;
    /// 0 picks 10 / (2*pi*reference_freq).
    double time_constant_s = 0.0;
    int filter_order = 4;
    double reference_phase_rad = 0.0;
  } lockin;

  struct Solver {
    /// Integration step ceiling (s); 0 picks 0.1 / max_rate.
    double dt_max_s = 0.0;
    /// Quasi-static path: interpolate from a verified table instead of
    /// solving at every sample.
    bool quasi_static_table = false;
    int table_points_per_axis = 64;
  } solver;

  struct Tone {
    double freq_hz = 500.0;
    double amplitude_v = 1.0;
    Waveform shape = Waveform::kSine;
    double duration_s = 1.0;
    double sample_rate_hz = 48000.0;
  } tone;

  struct SteadySweep {
    /// Carrier Rabi rates / 2*pi (kHz) to trace; empty uses the atom value.
    std::vector<double> omega_mu_rabi_khz;
  } steady_sweep;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);
void save_config(const std::filesystem::path& path, const RunConfig& config);

/// Conversions to the physical parameter structs (angular units).
AtomFieldParams atom_params(const RunConfig& config);
DecoherenceParams decoherence_params(const RunConfig& config);
CavityParams cavity_params(const RunConfig& config);
ModulationConfig modulation_config(const RunConfig& config);
TransmissionModel transmission_model(const RunConfig& config);
PhotodiodeModel photodiode_model(const RunConfig& config);
/// Lock-in settings with the reference frequency resolved against the
/// modulation tone and the auto time constant filled in.
LockInConfig lockin_config(const RunConfig& config, double mod_freq_hz);
AudioSignal config_tone(const RunConfig& config);

}  // namespace atomradio
