// Copyright 2026 The eegsv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EEGSV_IO_WAV_HPP_
#define EEGSV_IO_WAV_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "eegsv/error.hpp"
#include "eegsv/io/binary.hpp"

namespace eegsv::io {

struct WavData {
  int sample_rate = 0;
  std::vector<float> samples;  // mono, full scale = [-1, 1)
};

inline std::int16_t QuantizePcm16(float x) {
  const long v = std::lrint(static_cast<double>(x) * 32768.0);
  return static_cast<std::int16_t>(std::clamp<long>(v, -32768, 32767));
}

/// Writes 16-bit PCM mono. Samples already on the 1/32768 grid survive a
/// write/read cycle bit-exactly.
inline void WriteWav(const std::filesystem::path& path,
                     const std::vector<float>& samples, int sample_rate) {
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  std::vector<char> out;
  out.reserve(44 + data_bytes);
  AppendTag(&out, "RIFF");
  AppendLe<std::uint32_t>(&out, 36 + data_bytes);
  AppendTag(&out, "WAVE");
  AppendTag(&out, "fmt ");
  AppendLe<std::uint32_t>(&out, 16);
  AppendLe<std::uint16_t>(&out, 1);  // PCM
  AppendLe<std::uint16_t>(&out, 1);  // mono
  AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(sample_rate));
  AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(sample_rate * 2));
  AppendLe<std::uint16_t>(&out, 2);
  AppendLe<std::uint16_t>(&out, 16);
  AppendTag(&out, "data");
  AppendLe<std::uint32_t>(&out, data_bytes);
  for (float s : samples) AppendLe<std::int16_t>(&out, QuantizePcm16(s));
  WriteFileBytes(path, out);
}

inline WavData ReadWav(const std::filesystem::path& path) {
  ByteReader in(ReadFileBytes(path), path.string());
  in.ExpectTag("RIFF");
  in.Read<std::uint32_t>();
  in.ExpectTag("WAVE");
  WavData wav;
  bool have_fmt = false;
  while (in.remaining() >= 8) {
    char id[4];
    for (char& c : id) c = in.Read<char>();
    const auto size = in.Read<std::uint32_t>();
    const std::string chunk(id, 4);
    if (chunk == "fmt ") {
      if (size < 16) Fail(Errc::kFormatError, path.string() + ": short fmt");
      const auto format = in.Read<std::uint16_t>();
      const auto channels = in.Read<std::uint16_t>();
      wav.sample_rate = static_cast<int>(in.Read<std::uint32_t>());
      in.Read<std::uint32_t>();
      in.Read<std::uint16_t>();
      const auto bits = in.Read<std::uint16_t>();
      for (std::uint32_t i = 16; i < size; ++i) in.Read<char>();
      if (format != 1 || channels != 1 || bits != 16) {
        Fail(Errc::kFormatError,
             path.string() + ": only 16-bit PCM mono WAV is supported");
      }
      have_fmt = true;
    } else if (chunk == "data") {
      if (!have_fmt) Fail(Errc::kFormatError, path.string() + ": data before fmt");
      const std::size_t n = size / 2;
      if (in.remaining() < n * 2) {
        Fail(Errc::kFormatError, path.string() + ": truncated data chunk");
      }
      wav.samples.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        wav.samples[i] = static_cast<float>(in.Read<std::int16_t>()) / 32768.0f;
      }
      return wav;
    } else {
      for (std::uint32_t i = 0; i < size + (size & 1u); ++i) in.Read<char>();
    }
  }
  Fail(Errc::kFormatError, path.string() + ": no data chunk");
}

}  // namespace eegsv::io

#endif  // EEGSV_IO_WAV_HPP_
