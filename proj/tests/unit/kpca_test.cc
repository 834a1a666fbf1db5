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

#include <random>

#include <gtest/gtest.h>

#include "eegsv/kpca/kpca.hpp"
#include "oracles/dense_eigen.hpp"
#include "test_util.hpp"

namespace eegsv {
namespace {

FrameMatrix RandomFrames(int n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(d)));
  FrameMatrix x(n, d);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng);
  return x;
}

// Largest |a - s b| over the column, s = +-1 chosen per column.
double SignedColumnGap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, int col) {
  return std::min((a.col(col) - b.col(col)).cwiseAbs().maxCoeff(),
                  (a.col(col) + b.col(col)).cwiseAbs().maxCoeff());
}

TEST(OracleTest, JacobiDiagonalisesKnownMatrix) {
  Eigen::MatrixXd a(2, 2);
  a << 2, 1, 1, 2;
  const oracle::EigenPairs e = oracle::JacobiEigen(a);
  EXPECT_NEAR(e.values[0], 3.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
}

TEST(KpcaTest, FullFitMatchesDenseOracle) {
  const FrameMatrix x = RandomFrames(200, 155, 1);
  KpcaOptions opts;
  opts.components = 30;
  opts.max_landmarks = 200;
  const KpcaModel model = FitKpca(x, opts);
  const oracle::DenseKpcaResult want = oracle::DenseKpca(x, 30, 3, 1.0, 1.0);
  const FrameMatrix got = model.Project(x);
  for (int c = 0; c < 30; ++c) {
    EXPECT_LT(SignedColumnGap(got, want.scores, c), 1e-8) << "component " << c;
    EXPECT_NEAR(model.eigenvalues[c], want.eigenvalues[c], 1e-10 * want.eigenvalues[0]);
  }
  const auto table = ExplainedVarianceTable(model);
  for (int c = 0; c < 30; ++c) {
    EXPECT_NEAR(table[c].ratio, want.eigenvalues[c] / want.positive_sum, 1e-8);
  }
}

TEST(KpcaTest, SubsampledFitMatchesOracleOnLandmarks) {
  const FrameMatrix x = RandomFrames(500, 20, 2);
  KpcaOptions opts;
  opts.components = 10;
  opts.max_landmarks = 120;
  opts.seed = 5;
  const KpcaModel model = FitKpca(x, opts);
  ASSERT_EQ(model.num_landmarks(), 120);
  const oracle::DenseKpcaResult want = oracle::DenseKpca(model.landmarks, 10, 3, 1.0, 1.0);
  const FrameMatrix got = model.Project(model.landmarks);
  for (int c = 0; c < 10; ++c) EXPECT_LT(SignedColumnGap(got, want.scores, c), 1e-8);
  // Single-frame projection of landmark 0 agrees with the batched path.
  const Eigen::VectorXd row0 = model.Project(Eigen::VectorXd(model.landmarks.row(0).transpose()));
  for (int c = 0; c < 10; ++c) {
    EXPECT_NEAR(std::abs(row0[c]), std::abs(want.scores(0, c)), 1e-8);
  }
}

TEST(KpcaTest, LandmarksAreRowsOfInput) {
  const FrameMatrix x = RandomFrames(50, 4, 3);
  KpcaOptions opts;
  opts.components = 2;
  opts.max_landmarks = 10;
  const KpcaModel model = FitKpca(x, opts);
  for (int i = 0; i < 10; ++i) {
    bool found = false;
    for (int r = 0; r < 50 && !found; ++r) found = model.landmarks.row(i) == x.row(r);
    EXPECT_TRUE(found);
  }
}

TEST(KpcaTest, DegreeOneIsLinearPca) {
  const FrameMatrix x = RandomFrames(200, 155, 4);
  KpcaOptions opts;
  opts.components = 30;
  opts.max_landmarks = 200;
  opts.kernel = {.degree = 1, .gamma = 1.0, .coef0 = 0.0};
  const KpcaModel model = FitKpca(x, opts);
  const Eigen::MatrixXd want = oracle::LinearPcaScores(x, 30);
  const FrameMatrix got = model.Project(x);
  for (int c = 0; c < 30; ++c) EXPECT_LT(SignedColumnGap(got, want, c), 1e-8) << c;
}

TEST(KpcaTest, TwoDistinctFramesGiveOneComponent) {
  FrameMatrix x(2, 3);
  x << 1, 0, 0, 0, 1, 0;
  KpcaOptions opts;
  opts.components = 1;
  const KpcaModel model = FitKpca(x, opts);
  const auto table = ExplainedVarianceTable(model);
  ASSERT_EQ(table.size(), 1u);
  EXPECT_NEAR(table[0].ratio, 1.0, 1e-12);
}

TEST(KpcaTest, LowKernelRankIsRankDeficient) {
  const FrameMatrix base = RandomFrames(6, 155, 5);
  FrameMatrix x(200, 155);
  for (int r = 0; r < 200; ++r) x.row(r) = base.row(r % 6);
  KpcaOptions opts;
  opts.components = 30;
  EXPECT_ERRC(FitKpca(x, opts), Errc::kRankDeficient);
  opts.components = 5;
  EXPECT_EQ(FitKpca(x, opts).components(), 5);
}

TEST(KpcaTest, TooFewFrames) {
  KpcaOptions opts;
  opts.components = 30;
  EXPECT_ERRC(FitKpca(RandomFrames(10, 5, 1), opts), Errc::kInsufficientData);
}

TEST(KpcaTest, ExplainedVarianceArithmetic) {
  KpcaModel model;
  model.eigenvalues = Eigen::Vector2d(3, 1);
  model.total_variance = 4;
  const auto table = ExplainedVarianceTable(model);
  EXPECT_EQ(table[0].component, 1);
  EXPECT_DOUBLE_EQ(table[0].ratio, 0.75);
  EXPECT_DOUBLE_EQ(table[1].ratio, 0.25);
  EXPECT_DOUBLE_EQ(table[0].cumulative, 0.75);
  EXPECT_DOUBLE_EQ(table[1].cumulative, 1.0);
}

TEST(KpcaTest, CumulativeIsMonotoneAndBounded) {
  KpcaOptions opts;
  opts.components = 20;
  const KpcaModel model = FitKpca(RandomFrames(300, 30, 6), opts);
  double prev = 0;
  for (const auto& row : ExplainedVarianceTable(model)) {
    EXPECT_GE(row.cumulative, prev);
    EXPECT_LE(row.cumulative, 1.0 + 1e-12);
    prev = row.cumulative;
  }
}

TEST(KpcaTest, ProjectionIsDeterministicAndNotOdd) {
  KpcaOptions opts;
  opts.components = 5;
  const KpcaModel model = FitKpca(RandomFrames(100, 8, 7), opts);
  const Eigen::VectorXd x = RandomFrames(1, 8, 99).row(0).transpose();
  const Eigen::VectorXd a = model.Project(x), b = model.Project(x);
  EXPECT_EQ(a, b);
  const Eigen::VectorXd neg = model.Project(Eigen::VectorXd(-x));
  EXPECT_GT((a - neg).norm(), 1e-6);
  EXPECT_GT((a + neg).norm(), 1e-6);
}

TEST(KpcaTest, WrongDimensionRejected) {
  KpcaOptions opts;
  opts.components = 2;
  const KpcaModel model = FitKpca(RandomFrames(20, 8, 8), opts);
  EXPECT_ERRC(model.Project(RandomFrames(3, 7, 1)), Errc::kDimMismatch);
}

TEST(KpcaTest, SaveLoadRoundTrip) {
  testing::TempDir dir;
  KpcaOptions opts;
  opts.components = 4;
  opts.kernel.gamma = 0.5;
  const KpcaModel model = FitKpca(RandomFrames(40, 6, 9), opts);
  SaveKpca(model, dir / "k.bin");
  const KpcaModel back = LoadKpca(dir / "k.bin");
  EXPECT_EQ(back.landmarks, model.landmarks);
  EXPECT_EQ(back.alphas, model.alphas);
  EXPECT_EQ(back.kernel.gamma, 0.5);
  EXPECT_EQ(back.total_variance, model.total_variance);
  const FrameMatrix probe = RandomFrames(5, 6, 10);
  EXPECT_EQ(back.Project(probe), model.Project(probe));
  std::filesystem::resize_file(dir / "k.bin", 100);
  EXPECT_ERRC(LoadKpca(dir / "k.bin"), Errc::kFormatError);
}

}  // namespace
}  // namespace eegsv
