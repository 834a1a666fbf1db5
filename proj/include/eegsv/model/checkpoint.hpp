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

#ifndef EEGSV_MODEL_CHECKPOINT_HPP_
#define EEGSV_MODEL_CHECKPOINT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>

#include "eegsv/error.hpp"
#include "eegsv/features/feature_sequence.hpp"
#include "eegsv/io/binary.hpp"
#include "eegsv/model/encoder.hpp"
#include "eegsv/model/ge2e.hpp"
#include "json.hpp"

namespace eegsv {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  EncoderParams<double> encoder;
  Ge2eScale scale;
  FeatureKind feature = FeatureKind::kMfcc13;
  nlohmann::json config = nlohmann::json::object();  // written to the sidecar
};

inline std::filesystem::path CheckpointSidecar(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".json");
}

namespace internal {

template <typename Derived>
void AppendBlob(std::vector<char>* out, const Eigen::DenseBase<Derived>& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) io::AppendLe<double>(out, m(r, c));
  }
}

template <typename Derived>
void ReadBlob(io::ByteReader* in, Eigen::DenseBase<Derived>& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = in->Read<double>();
  }
}

}  // namespace internal

// Layout: "GE2E", u32 version, u32 cell, u32 input_dim, u32 hidden, u32 embed,
// u32 feature kind, then float64 column-major blobs: W, b, P, P bias, input
// shift, input scale, similarity w, similarity b.
inline void SaveCheckpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  const EncoderParams<double>& p = ckpt.encoder;
  std::vector<char> out;
  io::AppendTag(&out, "GE2E");
  io::AppendLe<std::uint32_t>(&out, kCheckpointVersion);
  io::AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(p.shape.cell));
  io::AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(p.shape.input_dim));
  io::AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(p.shape.hidden));
  io::AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(p.shape.embed));
  io::AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(ckpt.feature));
  internal::AppendBlob(&out, p.w);
  internal::AppendBlob(&out, p.b);
  internal::AppendBlob(&out, p.proj);
  internal::AppendBlob(&out, p.proj_b);
  internal::AppendBlob(&out, p.input_shift);
  internal::AppendBlob(&out, p.input_scale);
  io::AppendLe<double>(&out, ckpt.scale.w);
  io::AppendLe<double>(&out, ckpt.scale.b);
  io::WriteFileBytes(path, out);
  io::WriteTextFile(CheckpointSidecar(path), ckpt.config.dump(2) + "\n");
}

inline Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  io::ByteReader in(io::ReadFileBytes(path), path.string());
  in.ExpectTag("GE2E");
  const auto version = in.Read<std::uint32_t>();
  if (version != kCheckpointVersion) {
    Fail(Errc::kVersionMismatch, path.string() + ": checkpoint version " +
                                     std::to_string(version) + ", this build reads " +
                                     std::to_string(kCheckpointVersion));
  }
  EncoderShape shape;
  const auto cell = in.Read<std::uint32_t>();
  if (cell > 1) Fail(Errc::kFormatError, path.string() + ": unknown cell kind");
  shape.cell = static_cast<CellKind>(cell);
  shape.input_dim = static_cast<int>(in.Read<std::uint32_t>());
  shape.hidden = static_cast<int>(in.Read<std::uint32_t>());
  shape.embed = static_cast<int>(in.Read<std::uint32_t>());
  const auto feature = in.Read<std::uint32_t>();
  if (feature > 3) Fail(Errc::kFormatError, path.string() + ": unknown feature kind");
  const std::size_t expected =
      8 * (shape.cell_params() + shape.dense_params() + 2 * shape.input_dim + 2);
  if (in.remaining() != expected) {
    Fail(Errc::kFormatError, path.string() + ": payload size does not match header");
  }
  Checkpoint ckpt;
  ckpt.feature = static_cast<FeatureKind>(feature);
  ckpt.encoder = EncoderParams<double>::Zeros(shape);
  internal::ReadBlob(&in, ckpt.encoder.w);
  internal::ReadBlob(&in, ckpt.encoder.b);
  internal::ReadBlob(&in, ckpt.encoder.proj);
  internal::ReadBlob(&in, ckpt.encoder.proj_b);
  internal::ReadBlob(&in, ckpt.encoder.input_shift);
  internal::ReadBlob(&in, ckpt.encoder.input_scale);
  ckpt.scale.w = in.Read<double>();
  ckpt.scale.b = in.Read<double>();
  const auto sidecar = CheckpointSidecar(path);
  if (std::filesystem::exists(sidecar)) {
    const auto bytes = io::ReadFileBytes(sidecar);
    ckpt.config = nlohmann::json::parse(bytes.begin(), bytes.end(), nullptr, false);
    if (ckpt.config.is_discarded()) ckpt.config = nlohmann::json::object();
  }
  return ckpt;
}

}  // namespace eegsv

#endif  // EEGSV_MODEL_CHECKPOINT_HPP_
