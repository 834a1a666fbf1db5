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

#ifndef EEGSV_DSP_PREPROCESS_HPP_
#define EEGSV_DSP_PREPROCESS_HPP_

#include <functional>
#include <span>
#include <vector>

#include "eegsv/dsp/biquad.hpp"
#include "eegsv/types.hpp"

namespace eegsv::dsp {

struct EegFilterConfig {
  double band_low_hz = 0.1;
  double band_high_hz = 70.0;
  int band_order = 4;
  double notch_hz = 60.0;
  double notch_q = 30.0;
  double sample_rate = kEegRate;
};

/// Hook for biological-artifact removal over the whole multichannel block.
/// The default is the identity; component rejection is done elsewhere.
using ArtifactStage = std::function<void(EegSignal*)>;

/// Bandpass, then notch, then the artifact stage, channel by channel. Channels
/// never mix inside the filter stages.
class EegPreprocessor {
 public:
  explicit EegPreprocessor(const EegFilterConfig& config = {},
                           ArtifactStage artifact = nullptr)
      : bandpass_(DesignBandpass(config.band_low_hz, config.band_high_hz,
                                 config.sample_rate, config.band_order)),
        notch_(DesignNotch(config.notch_hz, config.sample_rate, config.notch_q)),
        artifact_(std::move(artifact)) {}

  EegSignal operator()(const EegSignal& raw) const {
    EegSignal out(raw.rows(), raw.cols());
    for (Eigen::Index c = 0; c < raw.rows(); ++c) {
      std::span<const double> row(raw.row(c).data(), static_cast<std::size_t>(raw.cols()));
      const std::vector<double> y = Apply(notch_, Apply(bandpass_, row));
      out.row(c) = Eigen::Map<const Eigen::RowVectorXd>(y.data(), raw.cols());
    }
    if (artifact_) artifact_(&out);
    return out;
  }

  const BiquadCascade& bandpass() const { return bandpass_; }
  const BiquadCascade& notch() const { return notch_; }

 private:
  BiquadCascade bandpass_;
  BiquadCascade notch_;
  ArtifactStage artifact_;
};

}  // namespace eegsv::dsp

#endif  // EEGSV_DSP_PREPROCESS_HPP_
