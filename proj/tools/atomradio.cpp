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

// Command-line front end. Numeric output is written with shortest
// round-trip formatting and fixed iteration order, so equal configurations
// and seeds produce byte-identical files.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "atomradio/config.hpp"
#include "atomradio/csv.hpp"
#include "atomradio/errors.hpp"
#include "atomradio/pipeline.hpp"
#include "atomradio/selftest.hpp"
#include "atomradio/wav.hpp"

namespace {

using namespace atomradio;

namespace fs = std::filesystem;

struct AxisSpec {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
};

AxisSpec parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t colon = text.find(':', begin);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(begin));
      break;
    }
    parts.push_back(text.substr(begin, colon - begin));
    begin = colon + 1;
  }
  if (parts.size() != 4) {
    throw ConfigError("--axis expects name:start:stop:points, got \"" + text +
                      "\"");
  }
  AxisSpec spec;
  spec.name = parts[0];
  try {
    std::size_t used = 0;
    spec.start = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    spec.stop = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    spec.points = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument(parts[3]);
  } catch (const std::exception&) {
    throw ConfigError("--axis has non-numeric fields in \"" + text + "\"");
  }
  if (spec.points < 1) throw ConfigError("--axis needs at least one point");
  return spec;
}

std::vector<double> linspace(const AxisSpec& spec, double scale) {
  std::vector<double> values(static_cast<std::size_t>(spec.points));
  if (spec.points == 1) {
    values[0] = spec.start * scale;
    return values;
  }
  for (int i = 0; i < spec.points; ++i) {
    const double frac = static_cast<double>(i) / (spec.points - 1);
    values[static_cast<std::size_t>(i)] =
        (spec.start + (spec.stop - spec.start) * frac) * scale;
  }
  return values;
}

void write_metadata(const fs::path& path,
                    const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  for (const auto& [key, value] : kv) {
    out << key << " = " << value << "\n";
  }
  if (!out) throw ConfigError("failed writing " + path.string());
}

std::vector<double> time_column(std::size_t n, double sample_rate) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = static_cast<double>(i) / sample_rate;
  }
  return t;
}

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::string path = "dynamic";
};

RunConfig resolve_config(const CommonArgs& args) {
  RunConfig config =
      args.config_path.empty() ? RunConfig{} : load_config(args.config_path);
  if (args.seed) config.seed = *args.seed;
  if (args.mode) {
    config.modulation.mode =
        *args.mode == "am" ? ModulationMode::kAm : ModulationMode::kFm;
  }
  return config;
}

TransductionPath resolve_path(const std::string& name) {
  return name == "quasi" ? TransductionPath::kQuasiStatic
                         : TransductionPath::kDynamic;
}

fs::path ensure_out_dir(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + out);
  return dir;
}

const char* mode_name(ModulationMode mode) {
  return mode == ModulationMode::kAm ? "am" : "fm";
}

int run_steady_sweep(const CommonArgs& args, const std::string& axis_text) {
  const RunConfig config = resolve_config(args);
  const AxisSpec spec = parse_axis(axis_text);

  SteadyAxis axis;
  if (spec.name == "delta_mu") {
    axis = SteadyAxis::kDeltaMu;
  } else if (spec.name == "omega_mu") {
    axis = SteadyAxis::kOmegaMu;
  } else {
    throw ConfigError("steady-sweep axis must be delta_mu or omega_mu (kHz), "
                      "got \"" + spec.name + "\"");
  }
  const std::vector<double> axis_khz = linspace(spec, 1.0);
  const std::vector<double> axis_rad = linspace(spec, kTwoPi * 1e3);

  const SteadySweepResult result = steady_sweep(config, axis, axis_rad);

  const fs::path dir = ensure_out_dir(args.out_dir);
  std::vector<std::string> header{"axis_value"};
  std::vector<std::span<const double>> columns{axis_khz};
  for (std::size_t k = 0; k < result.transmission.size(); ++k) {
    header.push_back("T_" + std::to_string(k));
    columns.emplace_back(result.transmission[k]);
  }
  write_csv(dir / "steady_sweep.csv", header, columns);

  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("command", "steady-sweep");
  meta.emplace_back("axis", spec.name);
  meta.emplace_back("axis_units", "kHz");
  meta.emplace_back("axis_points", std::to_string(spec.points));
  for (std::size_t k = 0; k < result.rabi_values.size(); ++k) {
    meta.emplace_back("T_" + std::to_string(k) + "_omega_mu_rabi_khz",
                      format_double(result.rabi_values[k] / (kTwoPi * 1e3)));
  }
  write_metadata(dir / "metadata.txt", meta);
  std::cout << "wrote " << (dir / "steady_sweep.csv").string() << "\n";
  return 0;
}

int run_transduce(const CommonArgs& args, const std::string& wav_in) {
  const RunConfig config = resolve_config(args);
  const TransductionPath path = resolve_path(args.path);

  const AudioSignal audio =
      wav_in.empty() ? config_tone(config) : load_wav(wav_in);
  const PipelineResult result = run_pipeline(config, audio, path);

  const fs::path dir = ensure_out_dir(args.out_dir);

  const auto n = result.encoded.size();
  const std::vector<double> t = time_column(n, result.encoded.sample_rate);
  write_csv(dir / "trajectory.csv",
            {"t_s", "omega_mu_rad_s", "delta_mu_rad_s"},
            {t, result.encoded.omega_mu, result.encoded.delta_mu});
  write_csv(dir / "transmission.csv", {"t_s", "transmission"},
            {t, result.transmission.samples});

  AudioSignal recovered = result.voltage;
  const NormalizationInfo norm = normalize_for_wav(recovered);
  save_wav(dir / "output.wav", recovered);

  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("command", "transduce");
  meta.emplace_back("mode", mode_name(config.modulation.mode));
  meta.emplace_back("path", args.path);
  meta.emplace_back("seed", std::to_string(config.seed));
  meta.emplace_back("input", wav_in.empty() ? "tone" : "wav");
  meta.emplace_back("samples", std::to_string(n));
  meta.emplace_back("sample_rate_hz", format_double(audio.sample_rate));
  meta.emplace_back("wav_removed_offset_v", format_double(norm.removed_offset));
  meta.emplace_back("wav_gain", format_double(norm.gain));
  write_metadata(dir / "metadata.txt", meta);
  std::cout << "wrote " << (dir / "output.wav").string() << "\n";
  return 0;
}

int run_lockin_sweep(const CommonArgs& args, const std::string& axis_text) {
  const RunConfig config = resolve_config(args);
  const TransductionPath path = resolve_path(args.path);
  const AxisSpec spec = parse_axis(axis_text);

  SweepAxis axis;
  double scale = 1.0;
  std::string units;
  if (spec.name == "delta_mu") {
    axis = SweepAxis::kDetuning;
    scale = kTwoPi * 1e3;
    units = "kHz";
  } else if (spec.name == "power") {
    axis = SweepAxis::kPower;
    units = "dBm";
  } else if (spec.name == "mod_freq") {
    axis = SweepAxis::kModFrequency;
    units = "Hz";
  } else {
    throw ConfigError(
        "lockin-sweep axis must be delta_mu (kHz), power (dBm) or mod_freq "
        "(Hz), got \"" + spec.name + "\"");
  }

  const std::vector<double> axis_native = linspace(spec, 1.0);
  const std::vector<double> axis_internal = linspace(spec, scale);
  const LockInSweepResult result =
      lockin_sweep(config, axis, axis_internal, path);

  std::vector<double> x(result.points.size());
  std::vector<double> y(result.points.size());
  std::vector<double> r(result.points.size());
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    x[i] = result.points[i].output.x;
    y[i] = result.points[i].output.y;
    r[i] = result.points[i].output.r;
  }

  const fs::path dir = ensure_out_dir(args.out_dir);
  write_csv(dir / "lockin_sweep.csv", {"axis_value", "X_V", "Y_V", "R_V"},
            {axis_native, x, y, r});

  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("command", "lockin-sweep");
  meta.emplace_back("axis", spec.name);
  meta.emplace_back("axis_units", units);
  meta.emplace_back("axis_points", std::to_string(spec.points));
  meta.emplace_back("mode", mode_name(config.modulation.mode));
  meta.emplace_back("path", args.path);
  meta.emplace_back("seed", std::to_string(config.seed));
  meta.emplace_back("reference_phase_rad",
                    format_double(result.reference_phase));
  meta.emplace_back("operating_detuning_khz",
                    format_double(result.operating_detuning / (kTwoPi * 1e3)));
  write_metadata(dir / "metadata.txt", meta);
  std::cout << "wrote " << (dir / "lockin_sweep.csv").string() << "\n";
  return 0;
}

int run_selftest_cmd(const CommonArgs& args) {
  const RunConfig config = resolve_config(args);
  const SelfTestReport report = run_selftest(config);
  for (const auto& check : report.checks) {
    const char* tag =
        check.skipped ? "[SKIP]" : (check.passed ? "[PASS]" : "[FAIL]");
    std::cout << tag << " " << check.name << ": " << check.detail << "\n";
  }
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atomradio: microwave-to-optical transduction simulator"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string steady_axis = "delta_mu:-300:300:121";
  std::string lockin_axis = "delta_mu:-300:300:61";
  std::string wav_in;
  std::uint64_t seed_value = 0;
  std::string mode_value;

  auto add_common = [&](CLI::App* sub, bool with_path) {
    sub->add_option("--config", args.config_path,
                    "Configuration file (JSON); defaults apply when omitted");
    sub->add_option("--out", args.out_dir, "Output directory");
    sub->add_option("--seed", seed_value, "Override the configured seed");
    sub->add_option("--mode", mode_value, "Override the modulation mode")
        ->check(CLI::IsMember({"am", "fm"}));
    if (with_path) {
      sub->add_option("--path", args.path,
                      "Transduction path: quasi or dynamic")
          ->check(CLI::IsMember({"quasi", "dynamic"}));
    }
  };

  CLI::App* steady = app.add_subcommand(
      "steady-sweep", "Steady-state transmission vs. detuning or drive");
  add_common(steady, false);
  steady->add_option("--axis", steady_axis, "name:start:stop:points");

  CLI::App* transduce = app.add_subcommand(
      "transduce", "Run audio through the full transduction chain");
  add_common(transduce, true);
  transduce->add_option("--wav", wav_in, "Input WAV (16-bit PCM); "
                        "the configured tone is used when omitted");

  CLI::App* lockin = app.add_subcommand(
      "lockin-sweep", "Demodulated response vs. detuning, power or tone rate");
  add_common(lockin, true);
  lockin->add_option("--axis", lockin_axis, "name:start:stop:points");

  CLI::App* selftest =
      app.add_subcommand("selftest", "Run the built-in physics checks");
  add_common(selftest, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (steady->count("--seed") || transduce->count("--seed") ||
        lockin->count("--seed") || selftest->count("--seed")) {
      args.seed = seed_value;
    }
    if (!mode_value.empty()) args.mode = mode_value;

    if (*steady) return run_steady_sweep(args, steady_axis);
    if (*transduce) return run_transduce(args, wav_in);
    if (*lockin) return run_lockin_sweep(args, lockin_axis);
    if (*selftest) return run_selftest_cmd(args);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const PhysicsError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
