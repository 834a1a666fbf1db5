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

// Cyclic Jacobi eigensolver plus full-Gram kernel PCA and covariance PCA
// built on it. Eigen is used for storage only; no Eigen decompositions.

#ifndef EEGSV_TESTS_ORACLES_DENSE_EIGEN_HPP_
#define EEGSV_TESTS_ORACLES_DENSE_EIGEN_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Core>

namespace eegsv::oracle {

struct EigenPairs {
  std::vector<double> values;  // descending
  Eigen::MatrixXd vectors;     // columns match `values`
};

inline EigenPairs JacobiEigen(Eigen::MatrixXd a, int max_sweeps = 100) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0, diag = 0;
    for (Eigen::Index p = 0; p < n; ++p) {
      diag += a(p, p) * a(p, p);
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off <= 1e-30 * diag || off == 0) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });
  EigenPairs out;
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values.push_back(a(order[i], order[i]));
    out.vectors.col(i) = v.col(order[i]);
  }
  return out;
}

struct DenseKpcaResult {
  std::vector<double> eigenvalues;  // top k of the centred Gram matrix
  Eigen::MatrixXd scores;           // N x k projections of the fit frames
  double positive_sum = 0;          // sum of all eigenvalues above 1e-9 * max
};

/// Full-Gram kernel PCA with k(x, y) = (gamma x.y + coef0)^degree.
inline DenseKpcaResult DenseKpca(const Eigen::MatrixXd& x, int k, int degree, double gamma,
                                 double coef0) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double dot = 0;
      for (Eigen::Index d = 0; d < x.cols(); ++d) dot += x(i, d) * x(j, d);
      gram(i, j) = std::pow(gamma * dot + coef0, degree);
    }
  }
  const Eigen::MatrixXd h =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd centred = h * gram * h;
  const EigenPairs eig = JacobiEigen(0.5 * (centred + centred.transpose()));
  DenseKpcaResult r;
  r.scores.resize(n, k);
  for (int c = 0; c < k; ++c) {
    r.eigenvalues.push_back(eig.values[c]);
    // Kc alpha = lambda alpha with |alpha|^2 lambda = 1 gives scores sqrt(lambda) u.
    r.scores.col(c) = eig.vectors.col(c) * std::sqrt(eig.values[c]);
  }
  for (double v : eig.values) {
    if (v > 1e-9 * eig.values[0]) r.positive_sum += v;
  }
  return r;
}

/// Principal-component scores of mean-centred `x` (N x k).
inline Eigen::MatrixXd LinearPcaScores(const Eigen::MatrixXd& x, int k) {
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd xc = x.rowwise() - mean;
  const EigenPairs eig = JacobiEigen(xc.transpose() * xc);
  return xc * eig.vectors.leftCols(k);
}

}  // namespace eegsv::oracle

#endif  // EEGSV_TESTS_ORACLES_DENSE_EIGEN_HPP_
