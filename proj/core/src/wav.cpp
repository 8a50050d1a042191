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

#include "atomradio/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "atomradio/errors.hpp"

namespace atomradio {

namespace {

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t get_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] |
                                    (static_cast<std::uint16_t>(p[1]) << 8));
}

}  // namespace

AudioSignal load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open WAV file: " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw FormatError("not a RIFF/WAVE file: " + path.string());
  }

  bool have_fmt = false;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t bits = 0;
  std::uint16_t format = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = get_u32(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) {
      throw FormatError("truncated WAV chunk in " + path.string());
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw FormatError("malformed fmt chunk");
      format = get_u16(bytes.data() + body);
      channels = get_u16(bytes.data() + body + 2);
      rate = get_u32(bytes.data() + body + 4);
      bits = get_u16(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = size;
    }
    pos = body + size + (size & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) {
    throw FormatError("WAV file missing fmt or data chunk: " + path.string());
  }
  if (format != 1 || bits != 16) {
    throw FormatError("only 16-bit PCM WAV is supported: " + path.string());
  }
  if (channels == 0 || rate == 0) throw FormatError("malformed WAV header");

  const std::size_t frame_bytes = 2u * channels;
  const std::size_t frames = data_size / frame_bytes;
  AudioSignal out;
  out.sample_rate = static_cast<double>(rate);
  out.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const auto raw = static_cast<std::int16_t>(get_u16(data + i * frame_bytes));
    out.samples[i] = static_cast<double>(raw) / 32768.0;
  }
  return out;
}

void save_wav(const std::filesystem::path& path, const AudioSignal& audio) {
  if (!(audio.sample_rate > 0.0)) {
    throw ConfigError("WAV sample rate must be > 0");
  }
  const auto rate = static_cast<std::uint32_t>(std::llround(audio.sample_rate));
  const auto n = static_cast<std::uint32_t>(audio.samples.size());

  std::string out;
  out.reserve(44 + 2u * n);
  out.append("RIFF");
  put_u32(out, 36 + 2u * n);
  out.append("WAVE");
  out.append("fmt ");
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, rate);
  put_u32(out, rate * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  out.append("data");
  put_u32(out, 2u * n);
  for (const double s : audio.samples) {
    const double clamped = std::clamp(s, -1.0, 1.0);
    const auto q = static_cast<std::int32_t>(std::llround(clamped * 32768.0));
    const auto pcm = static_cast<std::int16_t>(std::clamp(q, -32768, 32767));
    put_u16(out, static_cast<std::uint16_t>(pcm));
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("cannot write WAV file: " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw ConfigError("short write to WAV file: " + path.string());
}

}  // namespace atomradio
