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

#ifndef EEGSV_PROTOCOL_TRAINER_HPP_
#define EEGSV_PROTOCOL_TRAINER_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eegsv/dataset/manifest.hpp"
#include "eegsv/error.hpp"
#include "eegsv/fp_mode.hpp"
#include "eegsv/model/checkpoint.hpp"
#include "eegsv/model/encoder.hpp"
#include "eegsv/model/ge2e.hpp"
#include "eegsv/protocol/feature_store.hpp"
#include "eegsv/protocol/schedule.hpp"
#include "eegsv/random.hpp"
#include "eegsv/version.hpp"
#include "json.hpp"

namespace eegsv {

struct TrainConfig {
  int sentences_per_step = 3;
  CellKind cell = CellKind::kLstm;
  FeatureKind feature = FeatureKind::kMfcc13;
  int epochs = 10;
  double learning_rate = 0.01;
  double grad_clip_norm = 3.0;
  std::uint64_t seed = 1;
  int hidden = 128;
  int embed = 128;
  bool exclusive_centroids = true;
  bool standardize_inputs = true;
  Ge2eScale initial_scale;

  nlohmann::json ToJson() const {
    return {{"sentences_per_step", sentences_per_step},
            {"cell", CellKindName(cell)},
            {"features", FeatureKindName(feature)},
            {"epochs", epochs},
            {"learning_rate", learning_rate},
            {"grad_clip_norm", grad_clip_norm},
            {"seed", seed},
            {"hidden", hidden},
            {"embed", embed},
            {"exclusive_centroids", exclusive_centroids},
            {"standardize_inputs", standardize_inputs},
            {"initial_w", initial_scale.w},
            {"initial_b", initial_scale.b}};
  }
};

struct LossRecord {
  int epoch = 0;
  int step = 0;
  double loss = 0;
};

struct TrainResult {
  Checkpoint checkpoint;
  std::vector<LossRecord> loss_log;

  double EpochMeanLoss(int epoch) const {
    double sum = 0;
    int count = 0;
    for (const auto& r : loss_log) {
      if (r.epoch == epoch) {
        sum += r.loss;
        ++count;
      }
    }
    return count ? sum / count : std::nan("");
  }
};

inline std::string LossLogCsv(const std::vector<LossRecord>& log) {
  std::ostringstream out;
  out.precision(17);
  out << "epoch,step,loss\n";
  for (const auto& r : log) out << r.epoch << ',' << r.step << ',' << r.loss << '\n';
  return out.str();
}

/// Called after each epoch with the epoch index and its mean loss.
using TrainProgress = std::function<void(int, double)>;

/**
 * Sentence-windowed GE2E training. Each epoch walks the windows of
 * `sentences_per_step` sentences in order; every step draws two distinct
 * training subjects, builds the batch from their utterances in the window,
 * clips the global gradient norm and takes a plain gradient-descent step on
 * the encoder and on the similarity scale (w, b).
 *
 * Scalar selects the arithmetic of the recurrent encoder; the loss is always
 * evaluated in double and the checkpoint always stores double.
 */
template <typename Scalar = float>
TrainResult Train(const std::vector<std::string>& train_subjects, int utterances_per_subject,
                  const FeatureStore& store, const TrainConfig& cfg,
                  const TrainProgress& progress = {}) {
  if (train_subjects.size() < 2) {
    Fail(Errc::kInvalidArgument, "training needs at least two subjects");
  }
  if (!(cfg.learning_rate > 0) || cfg.epochs < 0) {
    Fail(Errc::kInvalidArgument, "learning rate must be positive and epochs >= 0");
  }
  const auto windows = SentenceWindows(utterances_per_subject, cfg.sentences_per_step);
  const ScopedFlushDenormals flush_denormals;

  // Load everything once; sequences are reused every epoch.
  const int num_subjects = static_cast<int>(train_subjects.size());
  std::vector<std::vector<FrameMatrix>> data(num_subjects);
  for (int s = 0; s < num_subjects; ++s) {
    for (int u = 0; u < utterances_per_subject; ++u) {
      FeatureSequence seq = store.Get(train_subjects[s], u);
      seq.Validate();
      data[s].push_back(std::move(seq.frames));
    }
  }
  EncoderShape shape;
  shape.cell = cfg.cell;
  shape.input_dim = static_cast<int>(data[0][0].cols());
  shape.hidden = cfg.hidden;
  shape.embed = cfg.embed;

  EncoderParams<Scalar> params = InitEncoder<Scalar>(shape, cfg.seed);
  if (cfg.standardize_inputs) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(shape.input_dim);
    Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(shape.input_dim);
    double frames = 0;
    for (const auto& subject : data) {
      for (const auto& f : subject) {
        if (f.cols() != shape.input_dim) {
          Fail(Errc::kDimMismatch, "feature dimensions differ between utterances");
        }
        sum += f.colwise().sum().transpose();
        sum_sq += f.array().square().colwise().sum().matrix().transpose();
        frames += static_cast<double>(f.rows());
      }
    }
    const Eigen::VectorXd mean = sum / frames;
    const Eigen::VectorXd var = (sum_sq / frames - mean.cwiseAbs2()).cwiseMax(0.0);
    params.input_shift = mean.cast<Scalar>();
    const Eigen::VectorXd inv_std =
        var.unaryExpr([](double v) { return 1.0 / std::sqrt(std::max(v, 1e-16)); });
    params.input_scale = inv_std.cast<Scalar>();
  }
  Ge2eScale scale = cfg.initial_scale;

  Rng rng = MakeStream({cfg.seed, 0x747261696e});
  TrainResult result;
  EncoderGrads<Scalar> grads = EncoderGrads<Scalar>::Zeros(shape);
  std::vector<ForwardCache<Scalar>> caches;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    double epoch_loss = 0;
    for (std::size_t step = 0; step < windows.size(); ++step) {
      const SentenceWindow& win = windows[step];
      if (win.size < 1) Fail(Errc::kDegenerateBatch, "empty sentence window");
      std::uniform_int_distribution<int> first(0, num_subjects - 1);
      std::uniform_int_distribution<int> second(0, num_subjects - 2);
      const int a = first(rng);
      int b = second(rng);
      if (b >= a) ++b;
      const int picked[2] = {a, b};

      Ge2eBatch batch;
      batch.speakers = 2;
      batch.utterances = win.size;
      batch.dvecs.resize(shape.embed, 2 * win.size);
      caches.resize(static_cast<std::size_t>(2 * win.size));
      for (int j = 0; j < 2; ++j) {
        for (int i = 0; i < win.size; ++i) {
          const int col = batch.row(j, i);
          batch.dvecs.col(col) =
              Forward(params, data[picked[j]][win.start + i], &caches[col]).template cast<double>();
        }
      }
      const bool exclusive = cfg.exclusive_centroids && win.size >= 2;
      // Float encoders produce unit vectors only to ~1e-7.
      const Ge2eGradients g = Ge2eLossAndGradients(batch, scale, exclusive, 1e-4);

      grads.SetZero();
      for (int col = 0; col < 2 * win.size; ++col) {
        Backward(params, caches[col], g.d_dvecs.col(col), &grads);
      }
      double dw = g.dw, db = g.db;
      const double norm = std::sqrt(grads.SquaredNorm() + dw * dw + db * db);
      double factor = cfg.learning_rate;
      if (norm > cfg.grad_clip_norm) factor *= cfg.grad_clip_norm / norm;
      const Scalar f = static_cast<Scalar>(factor);
      params.w -= f * grads.w;
      params.b -= f * grads.b;
      params.proj -= f * grads.proj;
      params.proj_b -= f * grads.proj_b;
      ++params.version;
      scale.w = std::max(scale.w - factor * dw, Ge2eScale::kMinW);
      scale.b -= factor * db;

      result.loss_log.push_back({epoch, static_cast<int>(step), g.loss});
      epoch_loss += g.loss;
    }
    if (progress) progress(epoch, epoch_loss / static_cast<double>(windows.size()));
  }

  result.checkpoint.encoder = params.template Cast<double>();
  result.checkpoint.encoder.version = 0;
  result.checkpoint.scale = scale;
  result.checkpoint.feature = cfg.feature;
  result.checkpoint.config = {{"tool_version", kVersion},
                              {"train", cfg.ToJson()},
                              {"train_subjects", train_subjects},
                              {"utterances_per_subject", utterances_per_subject}};
  return result;
}

template <typename Scalar = float>
TrainResult Train(const DatasetManifest& manifest, const FeatureStore& store,
                  const TrainConfig& cfg, const TrainProgress& progress = {}) {
  return Train<Scalar>(manifest.train_subjects, manifest.utterances_per_subject, store, cfg,
                       progress);
}

}  // namespace eegsv

#endif  // EEGSV_PROTOCOL_TRAINER_HPP_
