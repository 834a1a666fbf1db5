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

#ifndef EEGSV_FEATURES_PIPELINE_HPP_
#define EEGSV_FEATURES_PIPELINE_HPP_

#include "eegsv/dataset/manifest.hpp"
#include "eegsv/dsp/preprocess.hpp"
#include "eegsv/features/eeg_features.hpp"
#include "eegsv/features/mfcc.hpp"

namespace eegsv {

/// Recording -> MFCC13 and filtered-EEG statistics, tagged with its identity.
class FeaturePipeline {
 public:
  explicit FeaturePipeline(int channels = kDefaultChannels,
                           const dsp::EegFilterConfig& filter = {},
                           dsp::ArtifactStage artifact = nullptr)
      : preprocess_(filter, std::move(artifact)),
        eeg_({.channels = channels}) {}

  FeatureSequence Mfcc(const Recording& rec) const {
    FeatureSequence seq = mfcc_.Compute(rec.audio);
    Tag(rec, &seq);
    return seq;
  }

  FeatureSequence Eeg(const Recording& rec, bool filter = true) const {
    const EegSignal raw = rec.EegAsSignal();
    FeatureSequence seq = eeg_.Compute(filter ? preprocess_(raw) : raw);
    Tag(rec, &seq);
    return seq;
  }

  const dsp::EegPreprocessor& preprocessor() const { return preprocess_; }

 private:
  static void Tag(const Recording& rec, FeatureSequence* seq) {
    seq->subject_id = rec.subject_id;
    seq->sentence_index = rec.sentence_index;
  }

  dsp::EegPreprocessor preprocess_;
  MfccExtractor mfcc_;
  EegFeatureExtractor eeg_;
};

}  // namespace eegsv

#endif  // EEGSV_FEATURES_PIPELINE_HPP_
