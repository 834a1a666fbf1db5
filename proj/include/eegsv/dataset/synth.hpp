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

#ifndef EEGSV_DATASET_SYNTH_HPP_
#define EEGSV_DATASET_SYNTH_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "eegsv/dataset/manifest.hpp"
#include "eegsv/dsp/biquad.hpp"
#include "eegsv/error.hpp"
#include "eegsv/random.hpp"
#include "eegsv/version.hpp"

namespace eegsv {

struct SynthSpec {
  int num_subjects = 10;
  int utterances_per_subject = 90;
  int channel_count = kDefaultChannels;
  double noise_db = 40.0;  // acoustic SNR
  std::uint64_t seed = 1;
  int num_test_subjects = -1;  // -1: two when there are at least four subjects
  double min_seconds = 2.0;
  double max_seconds = 4.0;
};

/**
 * Synthetic stand-in for a simultaneous speech/EEG corpus.
 *
 * Each subject owns a latent identity vector z. Audio is a glottal pulse train
 * through three formant resonators; the speaker shifts f0 and formants only
 * slightly while per-segment "phonetic content" moves them a lot, and white
 * noise is added at the requested SNR. EEG is a sum of four band-limited noise
 * generators (1-4, 4-8, 8-16, 16-32 Hz) per channel whose gains are a fixed
 * function of z per channel group, plus mains hum and slow drift. EEG streams
 * are seeded separately from audio, so acoustic noise never touches them.
 */
class SynthGenerator {
 public:
  static constexpr int kLatentDim = 6;
  static constexpr int kChannelGroups = 4;
  static constexpr int kBands = 4;
  static constexpr double kBandEdges[kBands + 1] = {1, 4, 8, 16, 32};

  explicit SynthGenerator(const SynthSpec& spec) : spec_(spec) {
    if (spec.num_subjects < 2) {
      Fail(Errc::kInvalidArgument, "synthetic corpus needs at least 2 subjects");
    }
    if (spec.utterances_per_subject < 1) {
      Fail(Errc::kInvalidArgument, "need at least one utterance per subject");
    }
    if (spec.channel_count < 1) Fail(Errc::kInvalidArgument, "need at least one channel");
    if (!(spec.min_seconds >= 0.5 && spec.max_seconds >= spec.min_seconds)) {
      Fail(Errc::kInvalidArgument, "bad duration range");
    }
    Rng rng = MakeStream({spec_.seed, kMappingStream});
    std::normal_distribution<double> normal;
    const double norm = 1.0 / std::sqrt(static_cast<double>(kLatentDim));
    eeg_map_.resize(kChannelGroups * kBands, kLatentDim);
    for (Eigen::Index i = 0; i < eeg_map_.size(); ++i) eeg_map_.data()[i] = normal(rng) * norm;
    formant_map_.resize(3, kLatentDim);
    for (Eigen::Index i = 0; i < formant_map_.size(); ++i) {
      formant_map_.data()[i] = normal(rng) * norm;
    }
    pitch_map_.resize(kLatentDim);
    for (auto& v : pitch_map_) v = normal(rng) * norm;
    channel_gain_.resize(spec_.channel_count);
    for (auto& g : channel_gain_) g = std::exp(0.2 * normal(rng));

    latent_.resize(kLatentDim, spec_.num_subjects);
    for (int s = 0; s < spec_.num_subjects; ++s) {
      Rng subject_rng = MakeStream({spec_.seed, kSubjectStream, static_cast<std::uint64_t>(s)});
      for (int d = 0; d < kLatentDim; ++d) latent_(d, s) = normal(subject_rng);
    }
    for (int b = 0; b < kBands; ++b) {
      bands_.push_back(dsp::DesignBandpass(kBandEdges[b], kBandEdges[b + 1], kEegRate, 4));
    }
  }

  const SynthSpec& spec() const { return spec_; }

  std::string SubjectId(int subject) const {
    const int width = spec_.num_subjects > 99 ? 3 : 2;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "s%0*d", width, subject + 1);
    return buf;
  }

  int NumTestSubjects() const {
    if (spec_.num_test_subjects >= 0) return spec_.num_test_subjects;
    return spec_.num_subjects >= 4 ? 2 : 0;
  }

  /// Per-group band gains (groups x bands): the subject's EEG signature.
  Eigen::MatrixXd BandGains(int subject) const {
    const Eigen::VectorXd g = (0.5 * (eeg_map_ * latent_.col(subject))).array().exp();
    Eigen::MatrixXd out(kChannelGroups, kBands);
    for (int grp = 0; grp < kChannelGroups; ++grp) {
      for (int b = 0; b < kBands; ++b) out(grp, b) = g[grp * kBands + b];
    }
    return out;
  }

  Recording Generate(int subject, int sentence) const {
    if (subject < 0 || subject >= spec_.num_subjects || sentence < 0 ||
        sentence >= spec_.utterances_per_subject) {
      Fail(Errc::kNotFound, "no such synthetic utterance");
    }
    const auto s64 = static_cast<std::uint64_t>(subject);
    const auto u64 = static_cast<std::uint64_t>(sentence);
    Rng dur_rng = MakeStream({spec_.seed, kUtteranceStream, s64, u64, 0});
    std::uniform_real_distribution<double> dur(spec_.min_seconds, spec_.max_seconds);
    const int eeg_samples = static_cast<int>(std::lround(dur(dur_rng) * kEegRate));

    Recording rec;
    rec.subject_id = SubjectId(subject);
    rec.sentence_index = sentence;
    rec.noise_level_db = spec_.noise_db;
    rec.audio = SynthAudio(subject, eeg_samples * (kAudioRate / kEegRate),
                           MakeStream({spec_.seed, kUtteranceStream, s64, u64, 1}),
                           MakeStream({spec_.seed, kUtteranceStream, s64, u64, 2}));
    rec.eeg = SynthEeg(subject, eeg_samples,
                       MakeStream({spec_.seed, kUtteranceStream, s64, u64, 3}));
    return rec;
  }

 private:
  static constexpr std::uint64_t kMappingStream = 0x6d6170;
  static constexpr std::uint64_t kSubjectStream = 0x737562;
  static constexpr std::uint64_t kUtteranceStream = 0x757474;

  std::vector<float> SynthAudio(int subject, int n, Rng content_rng, Rng noise_rng) const {
    std::normal_distribution<double> normal;
    const double pi = std::numbers::pi;
    const double fs = kAudioRate;
    const Eigen::VectorXd z = latent_.col(subject);
    const double f0 = 120.0 * std::exp(0.15 * pitch_map_.dot(z) + 0.12 * normal(content_rng));
    const Eigen::Vector3d speaker_shift = 0.08 * (formant_map_ * z);
    const double base[3] = {500.0, 1500.0, 2500.0};
    const double bandwidth[3] = {80.0, 120.0, 160.0};

    const int segment = static_cast<int>(0.4 * fs);
    std::vector<double> y(n);
    double phase = 0;
    double state[3][2] = {};
    double a1[3], a2[3];
    for (int i = 0; i < n; ++i) {
      if (i % segment == 0) {
        for (int f = 0; f < 3; ++f) {
          const double freq = base[f] * std::exp(0.2 * normal(content_rng) + speaker_shift[f]);
          const double r = std::exp(-pi * bandwidth[f] / fs);
          a1[f] = -2 * r * std::cos(2 * pi * std::min(freq, 7000.0) / fs);
          a2[f] = r * r;
        }
      }
      phase += f0 / fs;
      double x = 0;
      if (phase >= 1) {
        phase -= 1;
        x = 1;
      }
      for (int f = 0; f < 3; ++f) {
        const double out = x - a1[f] * state[f][0] - a2[f] * state[f][1];
        state[f][1] = state[f][0];
        state[f][0] = out;
        x = out;
      }
      y[i] = x;
    }

    double power = 0;
    for (double v : y) power += v * v;
    power /= n;
    const double target_rms = 0.1;
    const double gain = power > 0 ? target_rms / std::sqrt(power) : 0;
    const double noise_sigma = target_rms / std::pow(10.0, spec_.noise_db / 20.0);
    std::vector<float> audio(n);
    for (int i = 0; i < n; ++i) {
      const double v = gain * y[i] + noise_sigma * normal(noise_rng);
      audio[i] = static_cast<float>(io::QuantizePcm16(static_cast<float>(v))) / 32768.0f;
    }
    return audio;
  }

  io::EegData SynthEeg(int subject, int n, Rng rng) const {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform(0, 2 * std::numbers::pi);
    const Eigen::MatrixXd gains = BandGains(subject);
    // Per-utterance state fluctuation of each group/band gain.
    Eigen::MatrixXd state(kChannelGroups, kBands);
    for (Eigen::Index i = 0; i < state.size(); ++i) state.data()[i] = std::exp(0.1 * normal(rng));

    io::EegData eeg;
    eeg.channels = spec_.channel_count;
    eeg.samples = n;
    eeg.data.assign(static_cast<std::size_t>(eeg.channels) * n, 0.0f);
    std::vector<double> white(n), acc(n);
    for (int c = 0; c < eeg.channels; ++c) {
      const int group = c * kChannelGroups / eeg.channels;
      std::fill(acc.begin(), acc.end(), 0.0);
      for (int b = 0; b < kBands; ++b) {
        for (auto& w : white) w = normal(rng);
        const std::vector<double> band = dsp::Apply(bands_[b], white);
        // Roughly unit variance per band before the identity gain.
        const double norm = std::sqrt(0.5 * kEegRate / (kBandEdges[b + 1] - kBandEdges[b]));
        const double g = norm * gains(group, b) * state(group, b);
        for (int i = 0; i < n; ++i) acc[i] += g * band[i];
      }
      const double hum_phase = uniform(rng);
      const double drift_phase = uniform(rng);
      for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / kEegRate;
        const double v = channel_gain_[c] * acc[i] + 0.3 * normal(rng) +
                         0.5 * std::sin(2 * std::numbers::pi * 60.0 * t + hum_phase) +
                         0.5 * std::sin(2 * std::numbers::pi * 0.05 * t + drift_phase);
        eeg.data[static_cast<std::size_t>(c) * n + i] = static_cast<float>(v);
      }
    }
    return eeg;
  }

  SynthSpec spec_;
  Eigen::MatrixXd eeg_map_;
  Eigen::MatrixXd formant_map_;
  Eigen::VectorXd pitch_map_;
  std::vector<double> channel_gain_;
  Eigen::MatrixXd latent_;  // kLatentDim x num_subjects
  std::vector<dsp::BiquadCascade> bands_;
};

/// Writes the whole corpus under `out_dir` (audio/, eeg/, manifest.json).
inline DatasetManifest SynthDataset(const SynthSpec& spec,
                                    const std::filesystem::path& out_dir) {
  const SynthGenerator gen(spec);
  DatasetManifest m;
  m.root = out_dir;
  m.channel_count = spec.channel_count;
  m.utterances_per_subject = spec.utterances_per_subject;
  const int num_train = spec.num_subjects - gen.NumTestSubjects();
  if (num_train < 0) Fail(Errc::kInvalidArgument, "more test subjects than subjects");
  for (int s = 0; s < spec.num_subjects; ++s) {
    const std::string id = gen.SubjectId(s);
    m.subjects.push_back(id);
    (s < num_train ? m.train_subjects : m.test_subjects).push_back(id);
    for (int u = 0; u < spec.utterances_per_subject; ++u) {
      const Recording rec = gen.Generate(s, u);
      char stem[32];
      std::snprintf(stem, sizeof(stem), "%s_%03d", id.c_str(), u);
      ManifestEntry e{id, u, std::string("audio/") + stem + ".wav",
                      std::string("eeg/") + stem + ".eeg"};
      SaveRecording(rec, out_dir / e.audio, out_dir / e.eeg);
      m.entries.push_back(std::move(e));
    }
  }
  m.metadata = {{"generator", "synth"},
                {"tool_version", kVersion},
                {"seed", spec.seed},
                {"noise_db", spec.noise_db},
                {"num_subjects", spec.num_subjects}};
  SaveManifest(m, out_dir / "manifest.json");
  return m;
}

}  // namespace eegsv

#endif  // EEGSV_DATASET_SYNTH_HPP_
