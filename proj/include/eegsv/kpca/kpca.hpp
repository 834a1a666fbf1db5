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

#ifndef EEGSV_KPCA_KPCA_HPP_
#define EEGSV_KPCA_KPCA_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iterator>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "eegsv/error.hpp"
#include "eegsv/io/binary.hpp"
#include "eegsv/random.hpp"
#include "eegsv/types.hpp"

namespace eegsv {

/// k(x, y) = (gamma * x.y + coef0)^degree
struct PolynomialKernel {
  int degree = 3;
  double gamma = 1.0;
  double coef0 = 1.0;

  template <typename Derived>
  void ApplyInPlace(Eigen::MatrixBase<Derived>& dots) const {
    dots = (gamma * dots.array() + coef0).pow(static_cast<double>(degree)).matrix();
  }
};

struct KpcaOptions {
  int components = 30;
  int max_landmarks = 2000;
  std::uint64_t seed = 0;
  PolynomialKernel kernel;
};

struct ExplainedVarianceRow {
  int component = 0;  // 1-based
  double ratio = 0;
  double cumulative = 0;
};

/// Fitted kernel PCA. Immutable once fitted; Project is reentrant.
struct KpcaModel {
  FrameMatrix landmarks;          // M x D
  Eigen::MatrixXd alphas;         // M x K, alpha_k' Kc alpha_k = 1
  Eigen::VectorXd kernel_row_means;
  double kernel_grand_mean = 0;
  Eigen::VectorXd eigenvalues;    // K, nonincreasing
  double total_variance = 0;      // sum of all retained positive eigenvalues
  PolynomialKernel kernel;

  int num_landmarks() const { return static_cast<int>(landmarks.rows()); }
  int input_dim() const { return static_cast<int>(landmarks.cols()); }
  int components() const { return static_cast<int>(alphas.cols()); }

  /// Rows of `frames` (N x D) -> N x K projections.
  FrameMatrix Project(const FrameMatrix& frames) const {
    if (frames.cols() != landmarks.cols()) {
      Fail(Errc::kDimMismatch, "KPCA expects " + std::to_string(landmarks.cols()) +
                                   "-dim frames, got " + std::to_string(frames.cols()));
    }
    if (!frames.allFinite()) Fail(Errc::kNonFiniteInput, "KPCA input is not finite");
    Eigen::MatrixXd k = frames * landmarks.transpose();  // N x M
    kernel.ApplyInPlace(k);
    const Eigen::VectorXd own_means = k.rowwise().mean();
    k.colwise() -= own_means;
    k.rowwise() -= kernel_row_means.transpose();
    k.array() += kernel_grand_mean;
    return k * alphas;
  }

  Eigen::VectorXd Project(const Eigen::VectorXd& frame) const {
    FrameMatrix one(1, frame.size());
    one.row(0) = frame.transpose();
    return Project(one).row(0).transpose();
  }
};

namespace internal {

inline Eigen::MatrixXd CenteredGram(const FrameMatrix& x, const PolynomialKernel& kernel,
                                    Eigen::VectorXd* row_means, double* grand_mean) {
  Eigen::MatrixXd gram = x * x.transpose();
  kernel.ApplyInPlace(gram);
  *row_means = gram.rowwise().mean();
  *grand_mean = row_means->mean();
  gram.colwise() -= *row_means;
  gram.rowwise() -= row_means->transpose();
  gram.array() += *grand_mean;
  return gram;
}

}  // namespace internal

/// Fits polynomial-kernel PCA on a seeded uniform subsample of the rows.
inline KpcaModel FitKpca(const FrameMatrix& frames, const KpcaOptions& opts) {
  const Eigen::Index n = frames.rows();
  const int k = opts.components;
  if (k < 1 || n < k || opts.max_landmarks < k) {
    Fail(Errc::kInsufficientData, "KPCA needs N >= k >= 1 and landmark cap >= k (N=" +
                                      std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
  if (!frames.allFinite()) Fail(Errc::kNonFiniteInput, "KPCA input is not finite");

  const Eigen::Index m = std::min<Eigen::Index>(n, opts.max_landmarks);
  std::vector<Eigen::Index> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  std::vector<Eigen::Index> picked;
  picked.reserve(static_cast<std::size_t>(m));
  Rng rng = MakeStream({opts.seed, 0x6b706361});
  std::sample(all.begin(), all.end(), std::back_inserter(picked), m, rng);

  KpcaModel model;
  model.kernel = opts.kernel;
  model.landmarks.resize(m, frames.cols());
  for (Eigen::Index i = 0; i < m; ++i) model.landmarks.row(i) = frames.row(picked[i]);

  const Eigen::MatrixXd centered = internal::CenteredGram(
      model.landmarks, opts.kernel, &model.kernel_row_means, &model.kernel_grand_mean);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(centered);
  if (eig.info() != Eigen::Success) {
    Fail(Errc::kRankDeficient, "eigendecomposition of the centred Gram matrix failed");
  }
  const Eigen::VectorXd& values = eig.eigenvalues();  // ascending
  const double top = values[values.size() - 1];
  // Rank cut-off: absolute floor, raised in proportion to the spectrum scale
  // so rounding noise of a large Gram matrix is not mistaken for signal.
  const double floor = std::max(1e-12, 1e-10 * std::max(top, 0.0));
  int positive = 0;
  double total = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] > floor) {
      ++positive;
      total += values[i];
    }
  }
  if (positive < k) {
    Fail(Errc::kRankDeficient, "only " + std::to_string(positive) +
                                   " positive kernel eigenvalues, need " + std::to_string(k));
  }
  model.total_variance = total;
  model.eigenvalues.resize(k);
  model.alphas.resize(m, k);
  for (int c = 0; c < k; ++c) {
    const Eigen::Index src = values.size() - 1 - c;
    const double lambda = values[src];
    Eigen::VectorXd alpha = eig.eigenvectors().col(src) / std::sqrt(lambda);
    Eigen::Index arg = 0;
    alpha.cwiseAbs().maxCoeff(&arg);
    if (alpha[arg] < 0) alpha = -alpha;
    model.eigenvalues[c] = lambda;
    model.alphas.col(c) = alpha;
  }
  return model;
}

inline std::vector<ExplainedVarianceRow> ExplainedVarianceTable(const KpcaModel& model) {
  std::vector<ExplainedVarianceRow> rows;
  double cumulative = 0;
  for (Eigen::Index c = 0; c < model.eigenvalues.size(); ++c) {
    const double ratio = model.eigenvalues[c] / model.total_variance;
    cumulative += ratio;
    rows.push_back({static_cast<int>(c + 1), ratio, cumulative});
  }
  return rows;
}

// Layout: "KPCA", u32 M, u32 K, u32 D, then float64: degree, gamma, coef0,
// landmarks (M x D row-major), alphas (M x K row-major), row means (M),
// grand mean, eigenvalues (K), total variance.
inline void SaveKpca(const KpcaModel& model, const std::filesystem::path& path) {
  std::vector<char> out;
  io::AppendTag(&out, "KPCA");
  io::AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(model.num_landmarks()));
  io::AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(model.components()));
  io::AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(model.input_dim()));
  io::AppendLe<double>(&out, model.kernel.degree);
  io::AppendLe<double>(&out, model.kernel.gamma);
  io::AppendLe<double>(&out, model.kernel.coef0);
  for (Eigen::Index r = 0; r < model.landmarks.rows(); ++r) {
    for (Eigen::Index c = 0; c < model.landmarks.cols(); ++c) {
      io::AppendLe<double>(&out, model.landmarks(r, c));
    }
  }
  for (Eigen::Index r = 0; r < model.alphas.rows(); ++r) {
    for (Eigen::Index c = 0; c < model.alphas.cols(); ++c) {
      io::AppendLe<double>(&out, model.alphas(r, c));
    }
  }
  for (double v : model.kernel_row_means) io::AppendLe<double>(&out, v);
  io::AppendLe<double>(&out, model.kernel_grand_mean);
  for (double v : model.eigenvalues) io::AppendLe<double>(&out, v);
  io::AppendLe<double>(&out, model.total_variance);
  io::WriteFileBytes(path, out);
}

inline KpcaModel LoadKpca(const std::filesystem::path& path) {
  io::ByteReader in(io::ReadFileBytes(path), path.string());
  in.ExpectTag("KPCA");
  const auto m = in.Read<std::uint32_t>();
  const auto k = in.Read<std::uint32_t>();
  const auto d = in.Read<std::uint32_t>();
  const std::size_t expected =
      8 * (3 + static_cast<std::size_t>(m) * d + static_cast<std::size_t>(m) * k + m + 1 + k + 1);
  if (in.remaining() != expected) {
    Fail(Errc::kFormatError, path.string() + ": header does not match payload");
  }
  KpcaModel model;
  model.kernel.degree = static_cast<int>(in.Read<double>());
  model.kernel.gamma = in.Read<double>();
  model.kernel.coef0 = in.Read<double>();
  model.landmarks.resize(m, d);
  for (std::uint32_t r = 0; r < m; ++r) {
    for (std::uint32_t c = 0; c < d; ++c) model.landmarks(r, c) = in.Read<double>();
  }
  model.alphas.resize(m, k);
  for (std::uint32_t r = 0; r < m; ++r) {
    for (std::uint32_t c = 0; c < k; ++c) model.alphas(r, c) = in.Read<double>();
  }
  model.kernel_row_means.resize(m);
  for (auto& v : model.kernel_row_means) v = in.Read<double>();
  model.kernel_grand_mean = in.Read<double>();
  model.eigenvalues.resize(k);
  for (auto& v : model.eigenvalues) v = in.Read<double>();
  model.total_variance = in.Read<double>();
  return model;
}

}  // namespace eegsv

#endif  // EEGSV_KPCA_KPCA_HPP_
