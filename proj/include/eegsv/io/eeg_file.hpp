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

#ifndef EEGSV_IO_EEG_FILE_HPP_
#define EEGSV_IO_EEG_FILE_HPP_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "eegsv/error.hpp"
#include "eegsv/io/binary.hpp"

namespace eegsv::io {

// Layout: "EEGF", u32 channel_count, u32 sample_count, u32 reserved (0),
// then channel-major float32 samples.
struct EegData {
  int channels = 0;
  int samples = 0;
  std::vector<float> data;  // channel-major, channels * samples

  float at(int channel, int sample) const {
    return data[static_cast<std::size_t>(channel) * samples + sample];
  }
};

inline void WriteEeg(const std::filesystem::path& path, const EegData& eeg) {
  std::vector<char> out;
  out.reserve(16 + eeg.data.size() * 4);
  AppendTag(&out, "EEGF");
  AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(eeg.channels));
  AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(eeg.samples));
  AppendLe<std::uint32_t>(&out, 0);
  for (float v : eeg.data) AppendLe<float>(&out, v);
  WriteFileBytes(path, out);
}

inline EegData ReadEeg(const std::filesystem::path& path) {
  ByteReader in(ReadFileBytes(path), path.string());
  in.ExpectTag("EEGF");
  EegData eeg;
  eeg.channels = static_cast<int>(in.Read<std::uint32_t>());
  eeg.samples = static_cast<int>(in.Read<std::uint32_t>());
  in.Read<std::uint32_t>();
  const std::size_t n = static_cast<std::size_t>(eeg.channels) * eeg.samples;
  if (eeg.channels <= 0 || in.remaining() != n * 4) {
    Fail(Errc::kFormatError, path.string() + ": header does not match payload size");
  }
  eeg.data.resize(n);
  for (auto& v : eeg.data) v = in.Read<float>();
  return eeg;
}

}  // namespace eegsv::io

#endif  // EEGSV_IO_EEG_FILE_HPP_
