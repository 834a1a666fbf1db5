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

#ifndef EEGSV_MODEL_GE2E_HPP_
#define EEGSV_MODEL_GE2E_HPP_

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "eegsv/error.hpp"

namespace eegsv {

/// n speakers x t utterances of E-dim d-vectors. Column j * t + i holds
/// utterance i of speaker j.
struct Ge2eBatch {
  int speakers = 0;
  int utterances = 0;
  Eigen::MatrixXd dvecs;  // E x (speakers * utterances)

  int row(int speaker, int utt) const { return speaker * utterances + utt; }
  void Validate() const {
    if (speakers < 2 || utterances < 1 || dvecs.cols() != speakers * utterances) {
      Fail(Errc::kInvalidArgument, "GE2E batch needs n >= 2 speakers, t >= 1 utterances");
    }
  }
};

/// Learnable affine scaling of the cosine similarity; w is kept positive.
struct Ge2eScale {
  double w = 10.0;
  double b = -5.0;
  static constexpr double kMinW = 1e-6;
};

/// Arithmetic mean of each speaker's d-vectors (not re-normalised), E x n.
inline Eigen::MatrixXd Centroids(const Ge2eBatch& batch) {
  batch.Validate();
  Eigen::MatrixXd c(batch.dvecs.rows(), batch.speakers);
  for (int j = 0; j < batch.speakers; ++j) {
    c.col(j) = batch.dvecs.middleCols(j * batch.utterances, batch.utterances).rowwise().mean();
  }
  return c;
}

/// Centroid of speaker j leaving out utterance i.
inline Eigen::VectorXd ExclusiveCentroid(const Ge2eBatch& batch, int speaker, int utt) {
  batch.Validate();
  if (batch.utterances < 2) {
    Fail(Errc::kNeedTwoUtterances, "exclusive centroid needs at least two utterances");
  }
  const auto block = batch.dvecs.middleCols(speaker * batch.utterances, batch.utterances);
  return (block.rowwise().sum() - block.col(utt)) / (batch.utterances - 1);
}

struct SimilarityMatrix {
  Eigen::MatrixXd s;      // (n * t) x n, w * cos + b
  Eigen::MatrixXd cos;    // raw cosines
  double w = 0;
  double b = 0;
  bool exclusive = false;
};

inline constexpr double kCosineGuard = 1e-12;

/// Entry ((j,i), k) = w * cos(e_ji, c_k) + b; with `exclusive` the own-speaker
/// column uses the centroid that leaves e_ji out.
inline SimilarityMatrix ComputeSimilarity(const Ge2eBatch& batch, const Ge2eScale& scale,
                                          bool exclusive, double unit_tolerance = 1e-6) {
  batch.Validate();
  if (!(scale.w > 0)) Fail(Errc::kInvalidArgument, "similarity scale w must be positive");
  if (exclusive && batch.utterances < 2) {
    Fail(Errc::kNeedTwoUtterances, "exclusive centroids need at least two utterances");
  }
  for (Eigen::Index col = 0; col < batch.dvecs.cols(); ++col) {
    if (std::abs(batch.dvecs.col(col).norm() - 1.0) > unit_tolerance) {
      Fail(Errc::kNonUnitDvec, "d-vector " + std::to_string(col) + " is not unit norm");
    }
  }
  const Eigen::MatrixXd cent = Centroids(batch);
  const int n = batch.speakers, t = batch.utterances;
  SimilarityMatrix sim;
  sim.cos.resize(n * t, n);
  sim.w = scale.w;
  sim.b = scale.b;
  sim.exclusive = exclusive;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < t; ++i) {
      const int r = batch.row(j, i);
      const auto e = batch.dvecs.col(r);
      const double ne = e.norm();
      for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd c =
            (exclusive && k == j) ? ExclusiveCentroid(batch, j, i) : Eigen::VectorXd(cent.col(k));
        sim.cos(r, k) = e.dot(c) / std::max(ne * c.norm(), kCosineGuard);
      }
    }
  }
  sim.s = (scale.w * sim.cos.array() + scale.b).matrix();
  return sim;
}

/// Mean over rows of -S[row, own] + logsumexp(S[row, :]). `d_sim` receives
/// dLoss/dS when non-null.
inline double Ge2eSoftmaxLoss(const Eigen::MatrixXd& s, int utterances,
                              Eigen::MatrixXd* d_sim = nullptr) {
  const Eigen::Index rows = s.rows();
  if (d_sim) d_sim->resize(rows, s.cols());
  double total = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Eigen::Index own = r / utterances;
    Eigen::Index top = 0;
    const double m = s.row(r).maxCoeff(&top);
    double rest = 0;  // sum of exp(S - max) over the non-maximal columns
    for (Eigen::Index k = 0; k < s.cols(); ++k) {
      if (k != top) rest += std::exp(s(r, k) - m);
    }
    total += std::log1p(rest) + (m - s(r, own));
    if (d_sim) {
      const double z = 1.0 + rest;
      for (Eigen::Index k = 0; k < s.cols(); ++k) {
        const double p = (k == top ? 1.0 : std::exp(s(r, k) - m)) / z;
        (*d_sim)(r, k) = (p - (k == own ? 1.0 : 0.0)) / static_cast<double>(rows);
      }
    }
  }
  return total / static_cast<double>(rows);
}

struct Ge2eGradients {
  double loss = 0;
  Eigen::MatrixXd d_sim;    // (n * t) x n
  Eigen::MatrixXd d_dvecs;  // E x (n * t)
  double dw = 0;
  double db = 0;
};

/// Loss of the batch and its exact gradients w.r.t. the d-vectors, w and b.
inline Ge2eGradients Ge2eLossAndGradients(const Ge2eBatch& batch, const Ge2eScale& scale,
                                          bool exclusive, double unit_tolerance = 1e-6) {
  const SimilarityMatrix sim = ComputeSimilarity(batch, scale, exclusive, unit_tolerance);
  Ge2eGradients g;
  g.loss = Ge2eSoftmaxLoss(sim.s, batch.utterances, &g.d_sim);
  g.dw = (g.d_sim.array() * sim.cos.array()).sum();
  g.db = g.d_sim.sum();

  const int n = batch.speakers, t = batch.utterances;
  const Eigen::MatrixXd cent = Centroids(batch);
  const Eigen::Index dim = batch.dvecs.rows();
  g.d_dvecs = Eigen::MatrixXd::Zero(dim, n * t);
  Eigen::MatrixXd d_cent = Eigen::MatrixXd::Zero(dim, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < t; ++i) {
      const int r = batch.row(j, i);
      const Eigen::VectorXd e = batch.dvecs.col(r);
      const double ne = e.norm();
      for (int k = 0; k < n; ++k) {
        const bool excl = exclusive && k == j;
        const Eigen::VectorXd c = excl ? ExclusiveCentroid(batch, j, i) : Eigen::VectorXd(cent.col(k));
        const double nc = c.norm();
        const double denom = std::max(ne * nc, kCosineGuard);
        const double cosv = sim.cos(r, k);
        const double gcos = g.d_sim(r, k) * scale.w;
        g.d_dvecs.col(r) += gcos * (c / denom - cosv * e / (ne * ne));
        const Eigen::VectorXd dc = gcos * (e / denom - cosv * c / (nc * nc));
        if (excl) {
          // c = (sum_m e_jm - e_ji) / (t - 1)
          for (int m = 0; m < t; ++m) {
            if (m != i) g.d_dvecs.col(batch.row(j, m)) += dc / (t - 1);
          }
        } else {
          d_cent.col(k) += dc;
        }
      }
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int m = 0; m < t; ++m) g.d_dvecs.col(batch.row(k, m)) += d_cent.col(k) / t;
  }
  return g;
}

}  // namespace eegsv

#endif  // EEGSV_MODEL_GE2E_HPP_
