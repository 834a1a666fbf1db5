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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "eegsv/features/eeg_features.hpp"
#include "oracles/eeg_reference.hpp"
#include "test_util.hpp"

namespace eegsv {
namespace {

std::vector<double> RandomFrame(std::mt19937_64& rng, int n = 100) {
  std::normal_distribution<double> normal(0.3, 2.0);
  std::vector<double> x(n);
  for (double& v : x) v = normal(rng);
  return x;
}

TEST(EegFrameStatsTest, ZeroFrameIsAllZero) {
  const EegFeatureExtractor ex;
  const std::vector<double> zeros(100, 0.0);
  const EegFrameStats s = ex.FrameStats(zeros);
  EXPECT_EQ(s.rms, 0.0);
  EXPECT_EQ(s.zcr, 0.0);
  EXPECT_EQ(s.mwa, 0.0);
  EXPECT_EQ(s.kurtosis, 0.0);
  EXPECT_EQ(s.pse, 0.0);
}

TEST(EegFrameStatsTest, AlternatingFrameIsExact) {
  const EegFeatureExtractor ex;
  std::vector<double> alt(100);
  for (int i = 0; i < 100; ++i) alt[i] = i % 2 ? -1.0 : 1.0;
  const EegFrameStats s = ex.FrameStats(alt);
  EXPECT_EQ(s.rms, 1.0);
  EXPECT_EQ(s.zcr, 1.0);
  EXPECT_EQ(s.mwa, 0.0);
  EXPECT_EQ(s.kurtosis, 1.0);
  // All power sits in the Nyquist bin.
  EXPECT_NEAR(s.pse, 0.0, 1e-12);
}

TEST(EegFrameStatsTest, MatchesReferenceOnRandomFrames) {
  const EegFeatureExtractor ex;
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x = RandomFrame(rng);
    if (trial % 5 == 0) x[trial % 100] = 0.0;  // exercise zero handling in zcr
    const EegFrameStats s = ex.FrameStats(x);
    const oracle::WindowStats w = oracle::ReferenceStats(x);
    EXPECT_NEAR(s.rms, w.rms, 1e-12);
    EXPECT_NEAR(s.zcr, w.zcr, 1e-15);
    EXPECT_NEAR(s.mwa, w.mwa, 1e-12);
    EXPECT_NEAR(s.kurtosis, w.kurtosis, 1e-9);
    EXPECT_NEAR(s.pse, w.pse, 1e-9);
  }
}

TEST(EegFrameStatsTest, ZeroSamplesKeepPreviousSign) {
  const EegFeatureExtractor ex;
  std::vector<double> x(100, 1.0);
  for (int i = 11; i < 100; ++i) x[i] = -1.0;
  x[10] = 0.0;  // one crossing, through a zero
  x[50] = 0.0;  // zero inside a negative run: no crossing
  EXPECT_DOUBLE_EQ(ex.FrameStats(x).zcr, 1.0 / 99.0);
}

TEST(EegFrameStatsTest, SineEntropyBelowWhiteNoise) {
  const EegFeatureExtractor ex;
  std::vector<double> sine(100);
  for (int i = 0; i < 100; ++i) sine[i] = std::sin(2 * std::numbers::pi * 50.0 * i / 1000);
  const double pse = ex.FrameStats(sine).pse;
  EXPECT_NEAR(pse, oracle::SpectralEntropy(sine), 1e-6);
  std::mt19937_64 rng(4);
  const std::vector<double> noise = RandomFrame(rng);
  EXPECT_LT(pse, ex.FrameStats(noise).pse);
}

TEST(EegFrameStatsTest, WrongLengthRejected) {
  const EegFeatureExtractor ex;
  EXPECT_ERRC(ex.FrameStats(std::vector<double>(99, 1.0)), Errc::kInvalidArgument);
}

TEST(EegFeaturesTest, OneSecondGivesNinetyOneFrames) {
  const EegFeatureExtractor ex;
  const FeatureSequence seq = ex.Compute(EegSignal::Random(31, 1000));
  EXPECT_EQ(seq.num_frames(), 91);
  EXPECT_EQ(seq.dim(), 155);
  EXPECT_EQ(seq.kind, FeatureKind::kEeg155);
}

TEST(EegFeaturesTest, FrameCountFormulaOnRandomLengths) {
  const EegFeatureExtractor ex({.channels = 2});
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> len(100, 5000);
  for (int trial = 0; trial < 20; ++trial) {
    const int s = len(rng);
    EXPECT_EQ(ex.Compute(EegSignal::Random(2, s)).num_frames(), 1 + (s - 100) / 10) << s;
  }
}

TEST(EegFeaturesTest, BatchedWindowsMatchPerFrameStats) {
  const EegFeatureExtractor ex({.channels = 3});
  std::mt19937_64 rng(8);
  EegSignal eeg(3, 437);
  std::normal_distribution<double> normal;
  for (Eigen::Index i = 0; i < eeg.size(); ++i) eeg.data()[i] = normal(rng);
  const FeatureSequence seq = ex.Compute(eeg);
  for (int c = 0; c < 3; ++c) {
    for (int f = 0; f < seq.num_frames(); ++f) {
      std::vector<double> frame(100);
      for (int i = 0; i < 100; ++i) frame[i] = eeg(c, f * 10 + i);
      const oracle::WindowStats w = oracle::ReferenceStats(frame);
      EXPECT_NEAR(seq.frames(f, 5 * c + 0), w.rms, 1e-12);
      EXPECT_NEAR(seq.frames(f, 5 * c + 1), w.zcr, 1e-15);
      EXPECT_NEAR(seq.frames(f, 5 * c + 2), w.mwa, 1e-12);
      EXPECT_NEAR(seq.frames(f, 5 * c + 3), w.kurtosis, 1e-9);
      EXPECT_NEAR(seq.frames(f, 5 * c + 4), w.pse, 1e-9);
    }
  }
}

TEST(EegFeaturesTest, ChannelPermutationPermutesBlocks) {
  const EegFeatureExtractor ex({.channels = 4});
  const EegSignal eeg = EegSignal::Random(4, 300);
  const std::vector<int> perm = {2, 0, 3, 1};
  EegSignal permuted(4, 300);
  for (int c = 0; c < 4; ++c) permuted.row(c) = eeg.row(perm[c]);
  const FeatureSequence a = ex.Compute(eeg), b = ex.Compute(permuted);
  for (int c = 0; c < 4; ++c) {
    EXPECT_EQ(b.frames.middleCols(5 * c, 5), a.frames.middleCols(5 * perm[c], 5));
  }
}

TEST(EegFeaturesTest, Errors) {
  const EegFeatureExtractor ex;
  EXPECT_ERRC(ex.Compute(EegSignal::Zero(30, 1000)), Errc::kChannelCountMismatch);
  EXPECT_ERRC(ex.Compute(EegSignal::Zero(31, 99)), Errc::kTooShort);
}

}  // namespace
}  // namespace eegsv
