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

#include "atomradio/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace atomradio {

namespace {

using nlohmann::json;

double khz_to_rad(double khz) { return kTwoPi * khz * 1e3; }

/// Strict object reader: every key must be claimed, leftovers are reported
/// with their full path.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) {
      throw ConfigError(path_ + " must be a JSON object");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  const json* claim(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void number(const char* key, double& out) {
    if (const json* v = claim(key)) {
      if (!v->is_number()) throw ConfigError(member(key) + " must be a number");
      out = v->get<double>();
    }
  }

  void integer(const char* key, int& out) {
    if (const json* v = claim(key)) {
      if (!v->is_number_integer()) {
        throw ConfigError(member(key) + " must be an integer");
      }
      out = v->get<int>();
    }
  }

  void uinteger(const char* key, std::uint64_t& out) {
    if (const json* v = claim(key)) {
      if (!v->is_number_unsigned() &&
          !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
        throw ConfigError(member(key) + " must be a non-negative integer");
      }
      out = v->get<std::uint64_t>();
    }
  }

  void boolean(const char* key, bool& out) {
    if (const json* v = claim(key)) {
      if (!v->is_boolean()) throw ConfigError(member(key) + " must be a bool");
      out = v->get<bool>();
    }
  }

  void optional_number(const char* key, std::optional<double>& out) {
    if (const json* v = claim(key)) {
      if (v->is_null()) {
        out.reset();
        return;
      }
      if (!v->is_number()) throw ConfigError(member(key) + " must be a number");
      out = v->get<double>();
    }
  }

  void number_list(const char* key, std::vector<double>& out) {
    if (const json* v = claim(key)) {
      if (!v->is_array()) {
        throw ConfigError(member(key) + " must be an array of numbers");
      }
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_number()) {
          throw ConfigError(member(key) + " must contain only numbers");
        }
        out.push_back(e.get<double>());
      }
    }
  }

  void string_choice(const char* key, const char* a, const char* b,
                     bool& picked_a) {
    if (const json* v = claim(key)) {
      if (!v->is_string()) throw ConfigError(member(key) + " must be a string");
      const auto s = v->get<std::string>();
      if (s == a) {
        picked_a = true;
      } else if (s == b) {
        picked_a = false;
      } else {
        throw ConfigError(member(key) + " must be \"" + a + "\" or \"" + b +
                          "\", got \"" + s + "\"");
      }
    }
  }

  /// Returns the subsection, or nullptr when absent.
  const json* object(const char* key) {
    if (const json* v = claim(key)) {
      if (!v->is_object()) {
        throw ConfigError(member(key) + " must be an object");
      }
      return v;
    }
    return nullptr;
  }

  std::string member(const char* key) const {
    return path_.empty() ? std::string(key) : path_ + "." + key;
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) {
        throw ConfigError("unknown config key \"" + member(item.key().c_str()) +
                          "\"");
      }
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void validate(const RunConfig& c) {
  require(c.atom.omega_opt_rabi_khz >= 0.0, "atom.omega_opt_rabi_khz must be >= 0");
  require(c.atom.omega_mu_rabi_khz >= 0.0, "atom.omega_mu_rabi_khz must be >= 0");
  require(c.decoherence.gamma_e_g1_khz >= 0.0 &&
              c.decoherence.gamma_e_g2_khz >= 0.0 &&
              c.decoherence.gamma_ground_relax_khz >= 0.0 &&
              c.decoherence.gamma_mw_dephase_khz >= 0.0,
          "decoherence rates must be >= 0");
  require(c.cavity.f_resonance_ghz > 0.0, "cavity.f_resonance_ghz must be > 0");
  require(c.cavity.quality_factor > 0.0, "cavity.quality_factor must be > 0");
  require(c.cavity.rabi_per_sqrt_mw_khz > 0.0,
          "cavity.rabi_per_sqrt_mw_khz must be > 0");
  require(c.transmission.optical_depth >= 0.0,
          "transmission.optical_depth must be >= 0");
  require(c.photodiode.gain_v > 0.0, "photodiode.gain_v must be > 0");
  require(c.photodiode.noise_rms_v >= 0.0, "photodiode.noise_rms_v must be >= 0");
  require(c.lockin.reference_freq_hz >= 0.0,
          "lockin.reference_freq_hz must be >= 0");
  require(c.lockin.time_constant_s >= 0.0, "lockin.time_constant_s must be >= 0");
  require(c.lockin.filter_order >= 1, "lockin.filter_order must be >= 1");
  require(c.solver.dt_max_s >= 0.0, "solver.dt_max_s must be >= 0");
  require(c.solver.table_points_per_axis >= 4,
          "solver.table_points_per_axis must be >= 4");
  require(c.tone.freq_hz >= 0.0, "tone.freq_hz must be >= 0");
  require(c.tone.duration_s > 0.0, "tone.duration_s must be > 0");
  require(c.tone.sample_rate_hz > 0.0, "tone.sample_rate_hz must be > 0");
  for (double v : c.steady_sweep.omega_mu_rabi_khz) {
    require(v >= 0.0, "steady_sweep.omega_mu_rabi_khz entries must be >= 0");
  }
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  RunConfig c;
  Section root(doc, "");
  root.uinteger("seed", c.seed);

  if (const json* j = root.object("atom")) {
    Section s(*j, "atom");
    s.number("omega_opt_rabi_khz", c.atom.omega_opt_rabi_khz);
    s.number("delta_opt_khz", c.atom.delta_opt_khz);
    s.number("omega_mu_rabi_khz", c.atom.omega_mu_rabi_khz);
    s.number("delta_mu_khz", c.atom.delta_mu_khz);
    s.finish();
  }
  if (const json* j = root.object("decoherence")) {
    Section s(*j, "decoherence");
    s.number("gamma_e_g1_khz", c.decoherence.gamma_e_g1_khz);
    s.number("gamma_e_g2_khz", c.decoherence.gamma_e_g2_khz);
    s.number("gamma_ground_relax_khz", c.decoherence.gamma_ground_relax_khz);
    s.number("gamma_mw_dephase_khz", c.decoherence.gamma_mw_dephase_khz);
    s.finish();
  }
  if (const json* j = root.object("cavity")) {
    Section s(*j, "cavity");
    s.number("f_resonance_ghz", c.cavity.f_resonance_ghz);
    s.number("quality_factor", c.cavity.quality_factor);
    s.number("rabi_per_sqrt_mw_khz", c.cavity.rabi_per_sqrt_mw_khz);
    s.finish();
  }
  if (const json* j = root.object("modulation")) {
    Section s(*j, "modulation");
    bool is_am = c.modulation.mode == ModulationMode::kAm;
    s.string_choice("mode", "am", "fm", is_am);
    c.modulation.mode = is_am ? ModulationMode::kAm : ModulationMode::kFm;
    s.number("m_am_per_volt", c.modulation.m_am_per_volt);
    s.number("m_fm_khz_per_volt", c.modulation.m_fm_khz_per_volt);
    s.optional_number("power_dbm", c.modulation.power_dbm);
    s.finish();
  }
  if (const json* j = root.object("transmission")) {
    Section s(*j, "transmission");
    s.number("optical_depth", c.transmission.optical_depth);
    s.finish();
  }
  if (const json* j = root.object("photodiode")) {
    Section s(*j, "photodiode");
    s.number("gain_v", c.photodiode.gain_v);
    s.number("offset_v", c.photodiode.offset_v);
    s.number("noise_rms_v", c.photodiode.noise_rms_v);
    s.finish();
  }
  if (const json* j = root.object("lockin")) {
    Section s(*j, "lockin");
    s.number("reference_freq_hz", c.lockin.reference_freq_hz);
    s.number("time_constant_s", c.lockin.time_constant_s);
    s.integer("filter_order", c.lockin.filter_order);
    s.number("reference_phase_rad", c.lockin.reference_phase_rad);
    s.finish();
  }
  if (const json* j = root.object("solver")) {
    Section s(*j, "solver");
    s.number("dt_max_s", c.solver.dt_max_s);
    s.boolean("quasi_static_table", c.solver.quasi_static_table);
    s.integer("table_points_per_axis", c.solver.table_points_per_axis);
    s.finish();
  }
  if (const json* j = root.object("tone")) {
    Section s(*j, "tone");
    s.number("freq_hz", c.tone.freq_hz);
    s.number("amplitude_v", c.tone.amplitude_v);
    bool is_sine = c.tone.shape == Waveform::kSine;
    s.string_choice("shape", "sine", "square", is_sine);
    c.tone.shape = is_sine ? Waveform::kSine : Waveform::kSquare;
    s.number("duration_s", c.tone.duration_s);
    s.number("sample_rate_hz", c.tone.sample_rate_hz);
    s.finish();
  }
  if (const json* j = root.object("steady_sweep")) {
    Section s(*j, "steady_sweep");
    s.number_list("omega_mu_rabi_khz", c.steady_sweep.omega_mu_rabi_khz);
    s.finish();
  }
  root.finish();

  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string serialize_config(const RunConfig& c) {
  json doc;
  doc["seed"] = c.seed;
  doc["atom"] = {{"omega_opt_rabi_khz", c.atom.omega_opt_rabi_khz},
                 {"delta_opt_khz", c.atom.delta_opt_khz},
                 {"omega_mu_rabi_khz", c.atom.omega_mu_rabi_khz},
                 {"delta_mu_khz", c.atom.delta_mu_khz}};
  doc["decoherence"] = {
      {"gamma_e_g1_khz", c.decoherence.gamma_e_g1_khz},
      {"gamma_e_g2_khz", c.decoherence.gamma_e_g2_khz},
      {"gamma_ground_relax_khz", c.decoherence.gamma_ground_relax_khz},
      {"gamma_mw_dephase_khz", c.decoherence.gamma_mw_dephase_khz}};
  doc["cavity"] = {{"f_resonance_ghz", c.cavity.f_resonance_ghz},
                   {"quality_factor", c.cavity.quality_factor},
                   {"rabi_per_sqrt_mw_khz", c.cavity.rabi_per_sqrt_mw_khz}};
  doc["modulation"] = {
      {"mode", c.modulation.mode == ModulationMode::kAm ? "am" : "fm"},
      {"m_am_per_volt", c.modulation.m_am_per_volt},
      {"m_fm_khz_per_volt", c.modulation.m_fm_khz_per_volt}};
  if (c.modulation.power_dbm) {
    doc["modulation"]["power_dbm"] = *c.modulation.power_dbm;
  }
  doc["transmission"] = {{"optical_depth", c.transmission.optical_depth}};
  doc["photodiode"] = {{"gain_v", c.photodiode.gain_v},
                       {"offset_v", c.photodiode.offset_v},
                       {"noise_rms_v", c.photodiode.noise_rms_v}};
  doc["lockin"] = {{"reference_freq_hz", c.lockin.reference_freq_hz},
                   {"time_constant_s", c.lockin.time_constant_s},
                   {"filter_order", c.lockin.filter_order},
                   {"reference_phase_rad", c.lockin.reference_phase_rad}};
  doc["solver"] = {{"dt_max_s", c.solver.dt_max_s},
                   {"quasi_static_table", c.solver.quasi_static_table},
                   {"table_points_per_axis", c.solver.table_points_per_axis}};
  doc["tone"] = {{"freq_hz", c.tone.freq_hz},
                 {"amplitude_v", c.tone.amplitude_v},
                 {"shape", c.tone.shape == Waveform::kSine ? "sine" : "square"},
                 {"duration_s", c.tone.duration_s},
                 {"sample_rate_hz", c.tone.sample_rate_hz}};
  doc["steady_sweep"] = {
      {"omega_mu_rabi_khz", c.steady_sweep.omega_mu_rabi_khz}};
  return doc.dump(2) + "\n";
}

void save_config(const std::filesystem::path& path, const RunConfig& config) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open " + path.string() + " for writing");
  }
  const std::string text = serialize_config(config);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw ConfigError("failed writing config to " + path.string());
  }
}

AtomFieldParams atom_params(const RunConfig& config) {
  AtomFieldParams p;
  p.omega_opt_rabi = khz_to_rad(config.atom.omega_opt_rabi_khz);
  p.delta_opt = khz_to_rad(config.atom.delta_opt_khz);
  p.omega_mu_rabi = config.modulation.power_dbm
                        ? input_power_to_rabi(*config.modulation.power_dbm,
                                              cavity_params(config))
                        : khz_to_rad(config.atom.omega_mu_rabi_khz);
  p.delta_mu = khz_to_rad(config.atom.delta_mu_khz);
  return p;
}

DecoherenceParams decoherence_params(const RunConfig& config) {
  DecoherenceParams p;
  p.gamma_e_g1 = khz_to_rad(config.decoherence.gamma_e_g1_khz);
  p.gamma_e_g2 = khz_to_rad(config.decoherence.gamma_e_g2_khz);
  p.gamma_ground_relax = khz_to_rad(config.decoherence.gamma_ground_relax_khz);
  p.gamma_mw_dephase = khz_to_rad(config.decoherence.gamma_mw_dephase_khz);
  return p;
}

CavityParams cavity_params(const RunConfig& config) {
  CavityParams p;
  p.f_resonance = config.cavity.f_resonance_ghz * 1e9;
  p.quality_factor = config.cavity.quality_factor;
  p.rabi_per_sqrt_mw = khz_to_rad(config.cavity.rabi_per_sqrt_mw_khz);
  return p;
}

ModulationConfig modulation_config(const RunConfig& config) {
  const AtomFieldParams atom = atom_params(config);
  ModulationConfig m;
  m.mode = config.modulation.mode;
  m.m_am = config.modulation.m_am_per_volt;
  m.m_fm = khz_to_rad(config.modulation.m_fm_khz_per_volt);
  m.carrier_rabi_0 = atom.omega_mu_rabi;
  m.carrier_detuning_0 = atom.delta_mu;
  return m;
}

TransmissionModel transmission_model(const RunConfig& config) {
  return TransmissionModel{config.transmission.optical_depth};
}

PhotodiodeModel photodiode_model(const RunConfig& config) {
  PhotodiodeModel p;
  p.gain = config.photodiode.gain_v;
  p.offset = config.photodiode.offset_v;
  p.noise_rms = config.photodiode.noise_rms_v;
  return p;
}

LockInConfig lockin_config(const RunConfig& config, double mod_freq_hz) {
  LockInConfig l;
  l.reference_freq = config.lockin.reference_freq_hz > 0.0
                         ? config.lockin.reference_freq_hz
                         : mod_freq_hz;
  l.time_constant = config.lockin.time_constant_s > 0.0
                        ? config.lockin.time_constant_s
                        : 10.0 / (kTwoPi * l.reference_freq);
  l.filter_order = config.lockin.filter_order;
  l.reference_phase = config.lockin.reference_phase_rad;
  return l;
}

AudioSignal config_tone(const RunConfig& config) {
  return make_tone(config.tone.freq_hz, config.tone.amplitude_v,
                   config.tone.shape, config.tone.duration_s,
                   config.tone.sample_rate_hz);
}

}  // namespace atomradio
