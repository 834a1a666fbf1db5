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

#ifndef EEGSV_FEATURES_EEG_FEATURES_HPP_
#define EEGSV_FEATURES_EEG_FEATURES_HPP_

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>

#include "eegsv/error.hpp"
#include "eegsv/features/feature_sequence.hpp"

namespace eegsv {

/// Per-channel statistics of one analysis window, in on-disk column order.
struct EegFrameStats {
  double rms = 0;
  double zcr = 0;
  double mwa = 0;       // moving-window average: the window mean
  double kurtosis = 0;  // Pearson m4 / m2^2; 0 for (near-)constant windows
  double pse = 0;       // power spectral entropy, nats
};

struct EegFeatureConfig {
  int channels = kDefaultChannels;
  int frame_length = 100;  // 100 ms at 1 kHz
  int frame_shift = 10;    // 10 ms -> 100 Hz
  double min_variance = 1e-12;
};

class EegFeatureExtractor {
 public:
  static constexpr int kStatsPerChannel = 5;

  explicit EegFeatureExtractor(const EegFeatureConfig& config = {})
      : config_(config) {
    const int n = config_.frame_length;
    const int bins = n / 2 + 1;
    cos_.resize(bins, n);
    sin_.resize(bins, n);
    for (int k = 0; k < bins; ++k) {
      for (int i = 0; i < n; ++i) {
        // (k * i) mod n keeps the angle small and exact in integers.
        const double angle = 2 * std::numbers::pi * ((k * i) % n) / n;
        cos_(k, i) = std::cos(angle);
        sin_(k, i) = std::sin(angle);
      }
    }
    one_sided_ = Eigen::VectorXd::Constant(bins, 2.0);
    one_sided_[0] = 1.0;
    if (n % 2 == 0) one_sided_[bins - 1] = 1.0;
  }

  const EegFeatureConfig& config() const { return config_; }
  int dim() const { return kStatsPerChannel * config_.channels; }

  int NumFrames(Eigen::Index num_samples) const {
    if (num_samples < config_.frame_length) return 0;
    return 1 + static_cast<int>((num_samples - config_.frame_length) / config_.frame_shift);
  }

  EegFrameStats FrameStats(std::span<const double> frame) const {
    if (static_cast<int>(frame.size()) != config_.frame_length) {
      Fail(Errc::kInvalidArgument, "EEG frame must have " +
                                       std::to_string(config_.frame_length) + " samples");
    }
    Eigen::Map<const Eigen::VectorXd> x(frame.data(), config_.frame_length);
    const Eigen::VectorXd re = cos_ * x;
    const Eigen::VectorXd im = sin_ * x;
    return Stats(frame, re.array().square() + im.array().square());
  }

  /// Statistics for every window of every channel; channel c fills columns
  /// [5c, 5c + 5).
  FeatureSequence Compute(const EegSignal& eeg) const {
    if (eeg.rows() != config_.channels) {
      Fail(Errc::kChannelCountMismatch,
           "expected " + std::to_string(config_.channels) + " EEG channels, got " +
               std::to_string(eeg.rows()));
    }
    const int t = NumFrames(eeg.cols());
    if (t == 0) {
      Fail(Errc::kTooShort, "EEG needs at least " +
                                std::to_string(config_.frame_length) + " samples");
    }
    FeatureSequence seq;
    seq.kind = FeatureKind::kEeg155;
    seq.frames.resize(t, dim());
    const int n = config_.frame_length;
    Eigen::MatrixXd re, im;
    for (Eigen::Index c = 0; c < eeg.rows(); ++c) {
      const double* row = eeg.row(c).data();
      // Overlapping windows as columns of a strided view.
      Eigen::Map<const Eigen::MatrixXd, 0, Eigen::OuterStride<>> windows(
          row, n, t, Eigen::OuterStride<>(config_.frame_shift));
      re.noalias() = cos_ * windows;
      im.noalias() = sin_ * windows;
      for (int f = 0; f < t; ++f) {
        const EegFrameStats s = Stats(
            std::span<const double>(row + static_cast<std::ptrdiff_t>(f) * config_.frame_shift, n),
            re.col(f).array().square() + im.col(f).array().square());
        const Eigen::Index base = kStatsPerChannel * c;
        seq.frames(f, base + 0) = s.rms;
        seq.frames(f, base + 1) = s.zcr;
        seq.frames(f, base + 2) = s.mwa;
        seq.frames(f, base + 3) = s.kurtosis;
        seq.frames(f, base + 4) = s.pse;
      }
    }
    return seq;
  }

 private:
  template <typename Derived>
  EegFrameStats Stats(std::span<const double> x,
                      const Eigen::ArrayBase<Derived>& dft_power) const {
    const double n = static_cast<double>(x.size());
    EegFrameStats s;
    double sum = 0, sum_sq = 0;
    for (double v : x) {
      sum += v;
      sum_sq += v * v;
    }
    s.mwa = sum / n;
    s.rms = std::sqrt(sum_sq / n);

    int prev_sign = 0;
    int changes = 0;
    for (double v : x) {
      const int sign = v > 0 ? 1 : (v < 0 ? -1 : prev_sign);
      if (prev_sign != 0 && sign != prev_sign) ++changes;
      prev_sign = sign;
    }
    s.zcr = changes / (n - 1);

    double m2 = 0, m4 = 0;
    for (double v : x) {
      const double d = v - s.mwa;
      const double d2 = d * d;
      m2 += d2;
      m4 += d2 * d2;
    }
    m2 /= n;
    m4 /= n;
    s.kurtosis = m2 < config_.min_variance ? 0.0 : m4 / (m2 * m2);

    const Eigen::ArrayXd power = dft_power * one_sided_.array();
    const double total = power.sum();
    if (total > 0) {
      for (Eigen::Index k = 0; k < power.size(); ++k) {
        const double p = power[k] / total;
        if (p > 0) s.pse -= p * std::log(p);
      }
    }
    return s;
  }

  EegFeatureConfig config_;
  Eigen::MatrixXd cos_;  // bins x frame_length
  Eigen::MatrixXd sin_;
  Eigen::VectorXd one_sided_;
};

}  // namespace eegsv

#endif  // EEGSV_FEATURES_EEG_FEATURES_HPP_
