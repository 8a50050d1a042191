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

#include "atomradio/csv.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "atomradio/errors.hpp"

namespace atomradio {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc()) throw NumericalError("double formatting failed");
  return std::string(buf, res.ptr);
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns) {
  if (header.size() != columns.size()) {
    throw ConfigError("CSV header and column counts differ");
  }
  if (columns.empty()) throw ConfigError("CSV needs at least one column");
  const std::size_t rows = columns.front().size();
  for (const auto& col : columns) {
    if (col.size() != rows) throw ConfigError("CSV columns differ in length");
  }

  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c > 0) out.push_back(',');
    out.append(header[c]);
  }
  out.push_back('\n');
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c > 0) out.push_back(',');
      out.append(format_double(columns[c][r]));
    }
    out.push_back('\n');
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("cannot write CSV file: " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw ConfigError("short write to CSV file: " + path.string());
}

}  // namespace atomradio
