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

#ifndef EEGSV_IO_BINARY_HPP_
#define EEGSV_IO_BINARY_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "eegsv/error.hpp"

namespace eegsv::io {

// Little-endian scalar encoding. All on-disk formats in this toolkit are
// little-endian regardless of host order.
template <typename T>
void AppendLe(std::vector<char>* out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  out->insert(out->end(), bytes.begin(), bytes.end());
}

inline void AppendTag(std::vector<char>* out, std::string_view tag) {
  out->insert(out->end(), tag.begin(), tag.end());
}

// Cursor over an in-memory file image; every read is bounds-checked and
// reports the file name on failure.
class ByteReader {
 public:
  ByteReader(std::vector<char> data, std::string name)
      : data_(std::move(data)), name_(std::move(name)) {}

  template <typename T>
  T Read() {
    Need(sizeof(T));
    std::array<char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), data_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
      std::reverse(bytes.begin(), bytes.end());
    }
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
  }

  void ExpectTag(std::string_view tag) {
    Need(tag.size());
    if (std::string_view(data_.data() + pos_, tag.size()) != tag) {
      Fail(Errc::kFormatError,
           name_ + ": bad magic, expected \"" + std::string(tag) + "\"");
    }
    pos_ += tag.size();
  }

  std::size_t remaining() const { return data_.size() - pos_; }
  const std::string& name() const { return name_; }

 private:
  void Need(std::size_t n) const {
    if (data_.size() - pos_ < n) {
      Fail(Errc::kFormatError, name_ + ": truncated file");
    }
  }

  std::vector<char> data_;
  std::string name_;
  std::size_t pos_ = 0;
};

inline std::vector<char> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(Errc::kMissingFile, "cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0, std::ios::beg);
  std::vector<char> data(size);
  if (size > 0 && !in.read(data.data(), static_cast<std::streamsize>(size))) {
    Fail(Errc::kIoError, "short read on " + path.string());
  }
  return data;
}

inline void WriteFileBytes(const std::filesystem::path& path,
                           const std::vector<char>& data) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(Errc::kIoError, "cannot create " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) Fail(Errc::kIoError, "write failed on " + path.string());
}

inline void WriteTextFile(const std::filesystem::path& path,
                          const std::string& text) {
  WriteFileBytes(path, std::vector<char>(text.begin(), text.end()));
}

}  // namespace eegsv::io

#endif  // EEGSV_IO_BINARY_HPP_
