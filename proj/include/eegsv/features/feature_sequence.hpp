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

#ifndef EEGSV_FEATURES_FEATURE_SEQUENCE_HPP_
#define EEGSV_FEATURES_FEATURE_SEQUENCE_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>

#include "eegsv/error.hpp"
#include "eegsv/io/binary.hpp"
#include "eegsv/types.hpp"

namespace eegsv {

enum class FeatureKind : std::uint32_t {
  kMfcc13 = 0,
  kEeg155 = 1,
  kEegKpca30 = 2,
  kConcat43 = 3,
};

/// Dimension at the default configuration (31 EEG channels, 30 KPCA
/// components). EEG-derived kinds scale with those settings.
constexpr int NominalDim(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kMfcc13: return 13;
    case FeatureKind::kEeg155: return 155;
    case FeatureKind::kEegKpca30: return 30;
    case FeatureKind::kConcat43: return 43;
  }
  return 0;
}

inline const char* FeatureKindName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kMfcc13: return "mfcc13";
    case FeatureKind::kEeg155: return "eeg155";
    case FeatureKind::kEegKpca30: return "eeg_kpca30";
    case FeatureKind::kConcat43: return "concat43";
  }
  return "unknown";
}

inline FeatureKind ParseFeatureKind(const std::string& name) {
  for (auto kind : {FeatureKind::kMfcc13, FeatureKind::kEeg155,
                    FeatureKind::kEegKpca30, FeatureKind::kConcat43}) {
    if (name == FeatureKindName(kind)) return kind;
  }
  Fail(Errc::kInvalidArgument, "unknown feature kind '" + name + "'");
}

/// T x D frames at 100 Hz for one utterance.
struct FeatureSequence {
  FrameMatrix frames;
  FeatureKind kind = FeatureKind::kMfcc13;
  std::string subject_id;
  int sentence_index = 0;
  double frame_rate = kFrameRate;

  int num_frames() const { return static_cast<int>(frames.rows()); }
  int dim() const { return static_cast<int>(frames.cols()); }

  void Validate() const {
    if (kind == FeatureKind::kMfcc13 && dim() != 13) {
      Fail(Errc::kDimMismatch, "MFCC sequence must have 13 dims");
    }
    if (kind == FeatureKind::kEeg155 && dim() % 5 != 0) {
      Fail(Errc::kDimMismatch, "EEG statistics come in blocks of 5 per channel");
    }
    if (dim() <= 0 || num_frames() <= 0) {
      Fail(Errc::kDimMismatch, "empty feature sequence");
    }
    if (!frames.allFinite()) {
      Fail(Errc::kNonFiniteInput, "feature sequence has non-finite entries");
    }
  }
};

/// Truncates both streams to the shorter one and stacks MFCC first.
inline FeatureSequence AlignConcat(const FeatureSequence& mfcc,
                                   const FeatureSequence& eeg) {
  if (mfcc.subject_id != eeg.subject_id || mfcc.sentence_index != eeg.sentence_index) {
    Fail(Errc::kIdentityMismatch,
         "cannot concatenate " + mfcc.subject_id + "/" +
             std::to_string(mfcc.sentence_index) + " with " + eeg.subject_id +
             "/" + std::to_string(eeg.sentence_index));
  }
  if (mfcc.frame_rate != eeg.frame_rate) {
    Fail(Errc::kInvalidArgument, "frame rates differ");
  }
  const Eigen::Index t = std::min(mfcc.frames.rows(), eeg.frames.rows());
  FeatureSequence out;
  out.kind = FeatureKind::kConcat43;
  out.subject_id = mfcc.subject_id;
  out.sentence_index = mfcc.sentence_index;
  out.frame_rate = mfcc.frame_rate;
  out.frames.resize(t, mfcc.frames.cols() + eeg.frames.cols());
  out.frames.leftCols(mfcc.frames.cols()) = mfcc.frames.topRows(t);
  out.frames.rightCols(eeg.frames.cols()) = eeg.frames.topRows(t);
  return out;
}

inline std::string FeatureFileName(const std::string& subject, int sentence,
                                   FeatureKind kind) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "_%03d.", sentence);
  return subject + buf + FeatureKindName(kind) + ".feat";
}

// Layout: "FEAT", u32 kind, u32 T, u32 D, then row-major float32 frames.
inline void WriteFeatures(const std::filesystem::path& path,
                          const FeatureSequence& seq) {
  std::vector<char> out;
  out.reserve(16 + static_cast<std::size_t>(seq.frames.size()) * 4);
  io::AppendTag(&out, "FEAT");
  io::AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(seq.kind));
  io::AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(seq.frames.rows()));
  io::AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(seq.frames.cols()));
  for (Eigen::Index r = 0; r < seq.frames.rows(); ++r) {
    for (Eigen::Index c = 0; c < seq.frames.cols(); ++c) {
      io::AppendLe<float>(&out, static_cast<float>(seq.frames(r, c)));
    }
  }
  io::WriteFileBytes(path, out);
}

inline FeatureSequence ReadFeatures(const std::filesystem::path& path,
                                    const std::string& subject = {},
                                    int sentence = 0) {
  io::ByteReader in(io::ReadFileBytes(path), path.string());
  in.ExpectTag("FEAT");
  const auto kind = in.Read<std::uint32_t>();
  const auto t = in.Read<std::uint32_t>();
  const auto d = in.Read<std::uint32_t>();
  if (kind > 3 || in.remaining() != static_cast<std::size_t>(t) * d * 4) {
    Fail(Errc::kFormatError, path.string() + ": header does not match payload");
  }
  FeatureSequence seq;
  seq.kind = static_cast<FeatureKind>(kind);
  seq.subject_id = subject;
  seq.sentence_index = sentence;
  seq.frames.resize(t, d);
  for (std::uint32_t r = 0; r < t; ++r) {
    for (std::uint32_t c = 0; c < d; ++c) seq.frames(r, c) = in.Read<float>();
  }
  return seq;
}

}  // namespace eegsv

#endif  // EEGSV_FEATURES_FEATURE_SEQUENCE_HPP_
