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

#ifndef EEGSV_FEATURES_MFCC_HPP_
#define EEGSV_FEATURES_MFCC_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "eegsv/error.hpp"
#include "eegsv/features/feature_sequence.hpp"
#include "eegsv/features/fft.hpp"

namespace eegsv {

struct MfccConfig {
  int sample_rate = kAudioRate;
  int frame_length = 400;  // 25 ms
  int frame_shift = 160;   // 10 ms
  int fft_size = 512;
  int num_mel_bins = 40;
  double low_freq = 0.0;
  double high_freq = 8000.0;
  int num_ceps = 13;
  double preemph = 0.97;
  double log_floor = 1e-10;
};

inline double HzToMel(double hz) { return 1127.0 * std::log1p(hz / 700.0); }

/**
 * MFCC front end:
 *   per-frame pre-emphasis -> Hamming window -> |FFT|^2 -> triangular mel
 *   filterbank -> log (floored) -> orthonormal DCT-II, first num_ceps kept.
 *
 * Frames only see their own samples, so shifting the input by one hop shifts
 * the output by exactly one frame.
 */
class MfccExtractor {
 public:
  explicit MfccExtractor(const MfccConfig& config = {})
      : config_(config), fft_(config.fft_size) {
    const int n = config_.frame_length;
    window_.resize(n);
    for (int i = 0; i < n; ++i) {
      window_[i] = 0.54 - 0.46 * std::cos(2 * std::numbers::pi * i / (n - 1));
    }

    const int num_bins = config_.fft_size / 2 + 1;
    const int m = config_.num_mel_bins;
    const double mel_low = HzToMel(config_.low_freq);
    const double mel_high = HzToMel(config_.high_freq);
    std::vector<double> edges(m + 2);
    for (int i = 0; i < m + 2; ++i) {
      edges[i] = mel_low + (mel_high - mel_low) * i / (m + 1);
    }
    filters_ = Eigen::MatrixXd::Zero(m, num_bins);
    for (int b = 0; b < m; ++b) {
      for (int k = 0; k < num_bins; ++k) {
        const double mel =
            HzToMel(static_cast<double>(k) * config_.sample_rate / config_.fft_size);
        if (mel > edges[b] && mel <= edges[b + 1]) {
          filters_(b, k) = (mel - edges[b]) / (edges[b + 1] - edges[b]);
        } else if (mel > edges[b + 1] && mel < edges[b + 2]) {
          filters_(b, k) = (edges[b + 2] - mel) / (edges[b + 2] - edges[b + 1]);
        }
      }
    }

    dct_.resize(config_.num_ceps, m);
    for (int c = 0; c < config_.num_ceps; ++c) {
      const double scale = c == 0 ? std::sqrt(1.0 / m) : std::sqrt(2.0 / m);
      for (int j = 0; j < m; ++j) {
        dct_(c, j) = scale * std::cos(std::numbers::pi * c * (j + 0.5) / m);
      }
    }
  }

  const MfccConfig& config() const { return config_; }
  const Eigen::MatrixXd& filterbank() const { return filters_; }

  int NumFrames(std::size_t num_samples) const {
    if (num_samples < static_cast<std::size_t>(config_.frame_length)) return 0;
    return 1 + static_cast<int>((num_samples - config_.frame_length) / config_.frame_shift);
  }

  /// Mel filterbank energies (before the log) of the frame starting at `start`.
  template <typename T>
  Eigen::VectorXd MelEnergies(std::span<const T> audio, std::size_t start) const {
    const int n = config_.frame_length;
    std::vector<double> frame(n);
    for (int i = 0; i < n; ++i) frame[i] = static_cast<double>(audio[start + i]);
    for (int i = n - 1; i > 0; --i) frame[i] -= config_.preemph * frame[i - 1];
    frame[0] -= config_.preemph * frame[0];
    for (int i = 0; i < n; ++i) frame[i] *= window_[i];
    const std::vector<double> power = fft_.PowerSpectrum(frame);
    return filters_ * Eigen::Map<const Eigen::VectorXd>(
                          power.data(), static_cast<Eigen::Index>(power.size()));
  }

  template <typename T>
  FeatureSequence Compute(std::span<const T> audio) const {
    const int t = NumFrames(audio.size());
    if (t == 0) {
      Fail(Errc::kTooShort, "audio needs at least " +
                                std::to_string(config_.frame_length) + " samples, got " +
                                std::to_string(audio.size()));
    }
    FeatureSequence seq;
    seq.kind = FeatureKind::kMfcc13;
    seq.frames.resize(t, config_.num_ceps);
    for (int f = 0; f < t; ++f) {
      Eigen::VectorXd log_energy =
          MelEnergies(audio, static_cast<std::size_t>(f) * config_.frame_shift);
      for (Eigen::Index j = 0; j < log_energy.size(); ++j) {
        log_energy[j] = std::log(std::max(log_energy[j], config_.log_floor));
      }
      seq.frames.row(f) = (dct_ * log_energy).transpose();
    }
    return seq;
  }

  template <typename T>
  FeatureSequence Compute(const std::vector<T>& audio) const {
    return Compute(std::span<const T>(audio));
  }

 private:
  MfccConfig config_;
  Fft fft_;
  std::vector<double> window_;
  Eigen::MatrixXd filters_;  // num_mel_bins x (fft_size/2 + 1)
  Eigen::MatrixXd dct_;      // num_ceps x num_mel_bins
};

template <typename T>
FeatureSequence Mfcc13(const std::vector<T>& audio) {
  static const MfccExtractor extractor;
  return extractor.Compute(audio);
}

}  // namespace eegsv

#endif  // EEGSV_FEATURES_MFCC_HPP_
