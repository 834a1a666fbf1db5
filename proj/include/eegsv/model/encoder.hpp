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

#ifndef EEGSV_MODEL_ENCODER_HPP_
#define EEGSV_MODEL_ENCODER_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "eegsv/error.hpp"
#include "eegsv/random.hpp"

namespace eegsv {

enum class CellKind : std::uint32_t { kLstm = 0, kGru = 1 };

inline const char* CellKindName(CellKind kind) {
  return kind == CellKind::kLstm ? "lstm" : "gru";
}

inline CellKind ParseCellKind(const std::string& name) {
  if (name == "lstm") return CellKind::kLstm;
  if (name == "gru") return CellKind::kGru;
  Fail(Errc::kInvalidArgument, "unknown cell kind '" + name + "'");
}

struct EncoderShape {
  CellKind cell = CellKind::kLstm;
  int input_dim = 13;
  int hidden = 128;
  int embed = 128;

  int gates() const { return (cell == CellKind::kLstm ? 4 : 3) * hidden; }
  std::size_t cell_params() const {
    return static_cast<std::size_t>(gates()) * (input_dim + hidden) + gates();
  }
  std::size_t dense_params() const {
    return static_cast<std::size_t>(embed) * hidden + embed;
  }
  bool operator==(const EncoderShape&) const = default;
};

/// Recurrent layer + dense projection. Gate rows are stacked as
/// [input; forget; candidate; output] for LSTM and [reset; update; candidate]
/// for GRU; the weight matrix acts on [x_t; h_{t-1}] (GRU candidate rows act
/// on [x_t; r * h_{t-1}]).
template <typename Scalar>
struct EncoderParams {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  EncoderShape shape;
  Matrix w;       // gates x (input_dim + hidden)
  Vector b;       // gates
  Matrix proj;    // embed x hidden
  Vector proj_b;  // embed
  // Fixed input standardisation x' = (x - shift) * scale; not trained.
  Vector input_shift;
  Vector input_scale;
  // Bumped on every parameter update so stale forward caches are detected.
  std::uint64_t version = 0;

  static EncoderParams Zeros(const EncoderShape& shape) {
    EncoderParams p;
    p.shape = shape;
    p.w = Matrix::Zero(shape.gates(), shape.input_dim + shape.hidden);
    p.b = Vector::Zero(shape.gates());
    p.proj = Matrix::Zero(shape.embed, shape.hidden);
    p.proj_b = Vector::Zero(shape.embed);
    p.input_shift = Vector::Zero(shape.input_dim);
    p.input_scale = Vector::Ones(shape.input_dim);
    return p;
  }

  template <typename Other>
  EncoderParams<Other> Cast() const {
    EncoderParams<Other> p;
    p.shape = shape;
    p.w = w.template cast<Other>();
    p.b = b.template cast<Other>();
    p.proj = proj.template cast<Other>();
    p.proj_b = proj_b.template cast<Other>();
    p.input_shift = input_shift.template cast<Other>();
    p.input_scale = input_scale.template cast<Other>();
    p.version = version;
    return p;
  }

  bool AllFinite() const {
    return w.allFinite() && b.allFinite() && proj.allFinite() && proj_b.allFinite() &&
           input_shift.allFinite() && input_scale.allFinite();
  }
};

/// Same layout as the trainable part of EncoderParams.
template <typename Scalar>
struct EncoderGrads {
  using Matrix = typename EncoderParams<Scalar>::Matrix;
  using Vector = typename EncoderParams<Scalar>::Vector;

  Matrix w;
  Vector b;
  Matrix proj;
  Vector proj_b;

  static EncoderGrads Zeros(const EncoderShape& shape) {
    EncoderGrads g;
    g.w = Matrix::Zero(shape.gates(), shape.input_dim + shape.hidden);
    g.b = Vector::Zero(shape.gates());
    g.proj = Matrix::Zero(shape.embed, shape.hidden);
    g.proj_b = Vector::Zero(shape.embed);
    return g;
  }

  void SetZero() {
    w.setZero();
    b.setZero();
    proj.setZero();
    proj_b.setZero();
  }

  double SquaredNorm() const {
    return static_cast<double>(w.squaredNorm()) + static_cast<double>(b.squaredNorm()) +
           static_cast<double>(proj.squaredNorm()) + static_cast<double>(proj_b.squaredNorm());
  }
};

/// Uniform(-0.1, 0.1) weights, zero biases, LSTM forget-gate bias 1.
template <typename Scalar>
EncoderParams<Scalar> InitEncoder(const EncoderShape& shape, std::uint64_t seed) {
  if (shape.input_dim < 1 || shape.hidden < 1 || shape.embed < 1) {
    Fail(Errc::kInvalidArgument, "encoder dimensions must be positive");
  }
  auto p = EncoderParams<double>::Zeros(shape);
  Rng rng = MakeStream({seed, 0x656e63});
  std::uniform_real_distribution<double> uniform(-0.1, 0.1);
  for (Eigen::Index i = 0; i < p.w.size(); ++i) p.w.data()[i] = uniform(rng);
  for (Eigen::Index i = 0; i < p.proj.size(); ++i) p.proj.data()[i] = uniform(rng);
  if (shape.cell == CellKind::kLstm) p.b.segment(shape.hidden, shape.hidden).setOnes();
  return p.template Cast<Scalar>();
}

/// Intermediates of one forward pass, consumed by Backward.
template <typename Scalar>
struct ForwardCache {
  using Matrix = typename EncoderParams<Scalar>::Matrix;
  using Vector = typename EncoderParams<Scalar>::Vector;

  const void* owner = nullptr;
  std::uint64_t version = 0;
  bool valid = false;

  Matrix x;     // input_dim x T, standardised
  Matrix act;   // gates x T, post-activation gate values
  Matrix h;     // hidden x (T + 1); column 0 is the zero initial state
  Matrix c;     // LSTM cell states, hidden x (T + 1)
  Matrix rh;    // GRU reset-gated state r_t * h_{t-1}, hidden x T
  Vector v;     // dense output before normalisation
  Scalar norm = 0;
  bool degenerate = false;  // |v| below the guard; d-vector is v / guard
  Vector d;     // d-vector
};

namespace internal {

template <typename Scalar>
inline Scalar Sigmoid(Scalar x) {
  return Scalar(1) / (Scalar(1) + std::exp(-x));
}

}  // namespace internal

inline constexpr double kNormGuard = 1e-8;

/// Runs the recurrence over `frames` (T x input_dim, one frame per row) and
/// returns the L2-normalised embedding of the final hidden state.
template <typename Scalar, typename Frames>
const typename EncoderParams<Scalar>::Vector& Forward(const EncoderParams<Scalar>& p,
                                                      const Eigen::MatrixBase<Frames>& frames,
                                                      ForwardCache<Scalar>* cache) {
  using Matrix = typename EncoderParams<Scalar>::Matrix;
  using Vector = typename EncoderParams<Scalar>::Vector;
  const EncoderShape& s = p.shape;
  const int hdim = s.hidden;
  const Eigen::Index steps = frames.rows();
  if (frames.cols() != s.input_dim) {
    Fail(Errc::kDimMismatch, "encoder expects " + std::to_string(s.input_dim) +
                                 "-dim frames, got " + std::to_string(frames.cols()));
  }
  if (steps < 1) Fail(Errc::kDimMismatch, "encoder needs at least one frame");

  ForwardCache<Scalar>& c = *cache;
  c.valid = false;
  c.x = ((frames.transpose().template cast<Scalar>().colwise() - p.input_shift).array()
             .colwise() * p.input_scale.array()).matrix();
  c.act.resize(s.gates(), steps);
  c.act.noalias() = p.w.leftCols(s.input_dim) * c.x;
  c.act.colwise() += p.b;
  c.h.setZero(hdim, steps + 1);

  Vector z(s.gates());
  if (s.cell == CellKind::kLstm) {
    c.c.setZero(hdim, steps + 1);
    const auto w_h = p.w.rightCols(hdim);
    for (Eigen::Index t = 0; t < steps; ++t) {
      z.noalias() = w_h * c.h.col(t);
      auto a = c.act.col(t);
      a += z;
      for (int j = 0; j < hdim; ++j) {
        const Scalar i_g = internal::Sigmoid(a[j]);
        const Scalar f_g = internal::Sigmoid(a[hdim + j]);
        const Scalar g_g = std::tanh(a[2 * hdim + j]);
        const Scalar o_g = internal::Sigmoid(a[3 * hdim + j]);
        a[j] = i_g;
        a[hdim + j] = f_g;
        a[2 * hdim + j] = g_g;
        a[3 * hdim + j] = o_g;
        const Scalar cell = f_g * c.c(j, t) + i_g * g_g;
        c.c(j, t + 1) = cell;
        c.h(j, t + 1) = o_g * std::tanh(cell);
      }
    }
  } else {
    c.rh.resize(hdim, steps);
    // Contiguous copies: strided blocks take a much slower GEMV path.
    const Matrix w_ru = p.w.block(0, s.input_dim, 2 * hdim, hdim);
    const Matrix w_n = p.w.block(2 * hdim, s.input_dim, hdim, hdim);
    Vector zn(hdim);
    for (Eigen::Index t = 0; t < steps; ++t) {
      auto a = c.act.col(t);
      z.head(2 * hdim).noalias() = w_ru * c.h.col(t);
      for (int j = 0; j < 2 * hdim; ++j) a[j] = internal::Sigmoid(a[j] + z[j]);
      c.rh.col(t) = a.head(hdim).cwiseProduct(c.h.col(t));
      zn.noalias() = w_n * c.rh.col(t);
      for (int j = 0; j < hdim; ++j) {
        const Scalar n_g = std::tanh(a[2 * hdim + j] + zn[j]);
        a[2 * hdim + j] = n_g;
        const Scalar u_g = a[hdim + j];
        c.h(j, t + 1) = u_g * c.h(j, t) + (Scalar(1) - u_g) * n_g;
      }
    }
  }

  c.v.noalias() = p.proj * c.h.col(steps);
  c.v += p.proj_b;
  if (!c.v.allFinite()) {
    Fail(Errc::kNonFiniteActivation, "encoder produced a non-finite activation");
  }
  c.norm = c.v.norm();
  c.degenerate = !(c.norm >= Scalar(kNormGuard));
  c.d = c.v / (c.degenerate ? Scalar(kNormGuard) : c.norm);
  c.owner = &p;
  c.version = p.version;
  c.valid = true;
  return c.d;
}

/// Accumulates dL/dparams into `grads` given dL/d(d-vector) for the cached
/// forward pass.
template <typename Scalar, typename Upstream>
void Backward(const EncoderParams<Scalar>& p, const ForwardCache<Scalar>& c,
              const Eigen::MatrixBase<Upstream>& d_dvec, EncoderGrads<Scalar>* grads) {
  using Matrix = typename EncoderParams<Scalar>::Matrix;
  using Vector = typename EncoderParams<Scalar>::Vector;
  if (!c.valid || c.owner != &p || c.version != p.version) {
    Fail(Errc::kStaleCache, "forward cache does not belong to the current parameters");
  }
  const EncoderShape& s = p.shape;
  const int hdim = s.hidden;
  const Eigen::Index steps = c.x.cols();

  const Vector dd = d_dvec.template cast<Scalar>();
  Vector dv;
  if (c.degenerate) {
    dv = dd / Scalar(kNormGuard);
  } else {
    dv = (dd - c.d * c.d.dot(dd)) / c.norm;
  }
  grads->proj.noalias() += dv * c.h.col(steps).transpose();
  grads->proj_b += dv;
  Vector dh = p.proj.transpose() * dv;

  Matrix dz(s.gates(), steps);
  if (s.cell == CellKind::kLstm) {
    Vector dcell = Vector::Zero(hdim);
    const auto w_h = p.w.rightCols(hdim);
    for (Eigen::Index t = steps - 1; t >= 0; --t) {
      const auto a = c.act.col(t);
      auto g = dz.col(t);
      for (int j = 0; j < hdim; ++j) {
        const Scalar i_g = a[j], f_g = a[hdim + j], g_g = a[2 * hdim + j],
                     o_g = a[3 * hdim + j];
        const Scalar tc = std::tanh(c.c(j, t + 1));
        const Scalar dc = dcell[j] + dh[j] * o_g * (Scalar(1) - tc * tc);
        g[j] = dc * g_g * i_g * (Scalar(1) - i_g);
        g[hdim + j] = dc * c.c(j, t) * f_g * (Scalar(1) - f_g);
        g[2 * hdim + j] = dc * i_g * (Scalar(1) - g_g * g_g);
        g[3 * hdim + j] = dh[j] * tc * o_g * (Scalar(1) - o_g);
        dcell[j] = dc * f_g;
      }
      dh.noalias() = w_h.transpose() * g;
    }
    grads->w.rightCols(hdim).noalias() += dz * c.h.leftCols(steps).transpose();
  } else {
    const Matrix w_ru = p.w.block(0, s.input_dim, 2 * hdim, hdim);
    const Matrix w_n = p.w.block(2 * hdim, s.input_dim, hdim, hdim);
    Vector d_rh(hdim), dh_prev(hdim);
    for (Eigen::Index t = steps - 1; t >= 0; --t) {
      const auto a = c.act.col(t);
      auto g = dz.col(t);
      for (int j = 0; j < hdim; ++j) {
        const Scalar u_g = a[hdim + j], n_g = a[2 * hdim + j];
        g[2 * hdim + j] = dh[j] * (Scalar(1) - u_g) * (Scalar(1) - n_g * n_g);
        g[hdim + j] = dh[j] * (c.h(j, t) - n_g) * u_g * (Scalar(1) - u_g);
        dh_prev[j] = dh[j] * u_g;
      }
      d_rh.noalias() = w_n.transpose() * g.tail(hdim);
      for (int j = 0; j < hdim; ++j) {
        const Scalar r_g = a[j];
        g[j] = d_rh[j] * c.h(j, t) * r_g * (Scalar(1) - r_g);
        dh_prev[j] += d_rh[j] * r_g;
      }
      dh_prev.noalias() += w_ru.transpose() * g.head(2 * hdim);
      dh.swap(dh_prev);
    }
    grads->w.block(0, s.input_dim, 2 * hdim, hdim).noalias() +=
        dz.topRows(2 * hdim) * c.h.leftCols(steps).transpose();
    grads->w.block(2 * hdim, s.input_dim, hdim, hdim).noalias() +=
        dz.bottomRows(hdim) * c.rh.transpose();
  }
  grads->w.leftCols(s.input_dim).noalias() += dz * c.x.transpose();
  grads->b += dz.rowwise().sum();
}

}  // namespace eegsv

#endif  // EEGSV_MODEL_ENCODER_HPP_
