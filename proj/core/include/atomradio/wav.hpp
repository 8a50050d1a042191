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

#include <filesystem>

#include "atomradio/modulation.hpp"

namespace atomradio {

/// Reads a 16-bit PCM RIFF/WAVE file. Multichannel input keeps the first
/// channel. Samples map to [-1, 1) volts as pcm / 32768. Throws FormatError
/// for anything but well-formed PCM16.
AudioSignal load_wav(const std::filesystem::path& path);

/// Writes mono 16-bit PCM. Samples are clamped to [-1, 1] and rounded.
void save_wav(const std::filesystem::path& path, const AudioSignal& audio);

}  // namespace atomradio
