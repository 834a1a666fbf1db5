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

#ifndef EEGSV_PROTOCOL_EVALUATOR_HPP_
#define EEGSV_PROTOCOL_EVALUATOR_HPP_

#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eegsv/error.hpp"
#include "eegsv/fp_mode.hpp"
#include "eegsv/model/checkpoint.hpp"
#include "eegsv/model/encoder.hpp"
#include "eegsv/protocol/eer.hpp"
#include "eegsv/protocol/feature_store.hpp"
#include "eegsv/protocol/schedule.hpp"
#include "eegsv/version.hpp"
#include "json.hpp"

namespace eegsv {

inline constexpr const char* kTestStepNote =
    "test steps = ceil(U/N) - 1 consecutive (enrollment, evaluation) window pairs; "
    "window s enrolls, window s+1 is evaluated";

struct EvalReport {
  std::vector<double> per_step_eer;
  double mean_eer = 0;
  nlohmann::json config = nlohmann::json::object();

  nlohmann::json ToJson() const {
    return {{"config", config},
            {"per_step_eer", per_step_eer},
            {"mean_eer", mean_eer},
            {"num_steps", per_step_eer.size()},
            {"note", kTestStepNote}};
  }

  /// One row of the report table: N, features, cell, dataset, EER in percent.
  std::string CsvRow() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", 100.0 * mean_eer);
    return std::to_string(config.value("sentences_per_step", 0)) + "," +
           config.value("features", std::string()) + "," + config.value("cell", std::string()) +
           "," + config.value("dataset", std::string()) + "," + buf;
  }

  static EvalReport FromJson(const nlohmann::json& j) {
    EvalReport r;
    r.config = j.at("config");
    r.per_step_eer = j.at("per_step_eer").get<std::vector<double>>();
    r.mean_eer = j.at("mean_eer").get<double>();
    return r;
  }
};

/// Rolling enrollment/evaluation over precomputed d-vectors.
/// `embeddings[s][u]` is the d-vector of sentence u of test subject s.
/// Scores are raw cosines against plain (non-exclusive) enrollment centroids.
inline EvalReport EvaluateEmbeddings(const std::vector<std::vector<Eigen::VectorXd>>& embeddings,
                                     int sentences_per_step) {
  if (embeddings.size() < 2) Fail(Errc::kInvalidArgument, "evaluation needs two subjects");
  const int utterances = static_cast<int>(embeddings[0].size());
  for (const auto& e : embeddings) {
    if (static_cast<int>(e.size()) != utterances) {
      Fail(Errc::kInvalidArgument, "test subjects have different utterance counts");
    }
  }
  const auto windows = SentenceWindows(utterances, sentences_per_step);
  if (windows.size() < 2) {
    Fail(Errc::kTooFewWindows, "need at least two sentence windows to enroll and evaluate");
  }
  EvalReport report;
  for (std::size_t step = 0; step + 1 < windows.size(); ++step) {
    const SentenceWindow& enroll = windows[step];
    const SentenceWindow& eval = windows[step + 1];
    std::vector<Eigen::VectorXd> centroids;
    for (const auto& subject : embeddings) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(subject[0].size());
      for (int u = enroll.start; u < enroll.start + enroll.size; ++u) c += subject[u];
      centroids.push_back(c / enroll.size);
    }
    std::vector<double> targets, impostors;
    for (std::size_t s = 0; s < embeddings.size(); ++s) {
      for (int u = eval.start; u < eval.start + eval.size; ++u) {
        const Eigen::VectorXd& d = embeddings[s][u];
        for (std::size_t k = 0; k < centroids.size(); ++k) {
          const double denom = std::max(d.norm() * centroids[k].norm(), 1e-12);
          const double score = d.dot(centroids[k]) / denom;
          (k == s ? targets : impostors).push_back(score);
        }
      }
    }
    report.per_step_eer.push_back(Eer(targets, impostors));
  }
  report.mean_eer = std::accumulate(report.per_step_eer.begin(), report.per_step_eer.end(), 0.0) /
                    static_cast<double>(report.per_step_eer.size());
  report.config = {{"sentences_per_step", sentences_per_step}, {"utterances", utterances}};
  return report;
}

/// D-vectors of every listed utterance under a checkpoint.
inline std::vector<std::vector<Eigen::VectorXd>> Embed(const Checkpoint& ckpt,
                                                       const std::vector<std::string>& subjects,
                                                       int utterances, const FeatureStore& store) {
  const EncoderParams<float> params = ckpt.encoder.Cast<float>();
  const ScopedFlushDenormals flush_denormals;
  ForwardCache<float> cache;
  std::vector<std::vector<Eigen::VectorXd>> out(subjects.size());
  for (std::size_t s = 0; s < subjects.size(); ++s) {
    for (int u = 0; u < utterances; ++u) {
      const FeatureSequence seq = store.Get(subjects[s], u);
      out[s].push_back(Forward(params, seq.frames, &cache).cast<double>());
    }
  }
  return out;
}

inline EvalReport Evaluate(const Checkpoint& ckpt, const std::vector<std::string>& test_subjects,
                           int utterances, int sentences_per_step, const FeatureStore& store,
                           const std::string& dataset_tag = {}) {
  if (store.kind() != ckpt.feature) {
    Fail(Errc::kVersionMismatch, std::string("checkpoint was trained on ") +
                                     FeatureKindName(ckpt.feature) + " features, got " +
                                     FeatureKindName(store.kind()));
  }
  EvalReport report =
      EvaluateEmbeddings(Embed(ckpt, test_subjects, utterances, store), sentences_per_step);
  report.config["features"] = FeatureKindName(ckpt.feature);
  report.config["cell"] = CellKindName(ckpt.encoder.shape.cell);
  report.config["dataset"] = dataset_tag;
  report.config["test_subjects"] = test_subjects;
  report.config["tool_version"] = kVersion;
  return report;
}

}  // namespace eegsv

#endif  // EEGSV_PROTOCOL_EVALUATOR_HPP_
