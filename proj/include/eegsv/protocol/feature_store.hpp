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

#ifndef EEGSV_PROTOCOL_FEATURE_STORE_HPP_
#define EEGSV_PROTOCOL_FEATURE_STORE_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <utility>

#include "eegsv/error.hpp"
#include "eegsv/features/feature_sequence.hpp"

namespace eegsv {

/// Source of per-utterance feature sequences of a single kind.
class FeatureStore {
 public:
  virtual ~FeatureStore() = default;
  virtual FeatureKind kind() const = 0;
  /// Throws Errc::kFeatureMissing when the utterance has no features.
  virtual FeatureSequence Get(const std::string& subject, int sentence) const = 0;
};

class MemoryFeatureStore : public FeatureStore {
 public:
  explicit MemoryFeatureStore(FeatureKind kind) : kind_(kind) {}

  FeatureKind kind() const override { return kind_; }

  void Put(FeatureSequence seq) {
    auto key = std::make_pair(seq.subject_id, seq.sentence_index);
    items_[std::move(key)] = std::move(seq);
  }

  FeatureSequence Get(const std::string& subject, int sentence) const override {
    const auto it = items_.find({subject, sentence});
    if (it == items_.end()) {
      Fail(Errc::kFeatureMissing, std::string(FeatureKindName(kind_)) + " features for " +
                                      subject + "/" + std::to_string(sentence));
    }
    return it->second;
  }

  std::size_t size() const { return items_.size(); }

 private:
  FeatureKind kind_;
  std::map<std::pair<std::string, int>, FeatureSequence> items_;
};

/// Reads FEAT files named by FeatureFileName from one directory. CONCAT43 is
/// assembled on the fly from the MFCC13 and EEG_KPCA30 files.
class DirectoryFeatureStore : public FeatureStore {
 public:
  DirectoryFeatureStore(std::filesystem::path dir, FeatureKind kind)
      : dir_(std::move(dir)), kind_(kind) {}

  FeatureKind kind() const override { return kind_; }

  FeatureSequence Get(const std::string& subject, int sentence) const override {
    if (kind_ == FeatureKind::kConcat43) {
      return AlignConcat(Read(subject, sentence, FeatureKind::kMfcc13),
                         Read(subject, sentence, FeatureKind::kEegKpca30));
    }
    return Read(subject, sentence, kind_);
  }

 private:
  FeatureSequence Read(const std::string& subject, int sentence, FeatureKind kind) const {
    const auto path = dir_ / FeatureFileName(subject, sentence, kind);
    if (!std::filesystem::exists(path)) Fail(Errc::kFeatureMissing, path.string());
    FeatureSequence seq = ReadFeatures(path, subject, sentence);
    if (seq.kind != kind) {
      Fail(Errc::kFormatError, path.string() + ": stored kind does not match file name");
    }
    return seq;
  }

  std::filesystem::path dir_;
  FeatureKind kind_;
};

}  // namespace eegsv

#endif  // EEGSV_PROTOCOL_FEATURE_STORE_HPP_
