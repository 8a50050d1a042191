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
#include <span>
#include <string>
#include <vector>

namespace atomradio {

/// Shortest decimal representation that round-trips the double exactly
/// (std::to_chars); the same input bytes on every platform.
std::string format_double(double value);

/// Writes one header line and one row per entry of the first column span.
/// All columns must have equal length.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns);

}  // namespace atomradio
