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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. `--only AC5,AC8` restricts the run.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eegsv/eegsv.hpp"
#include "oracles/dense_eigen.hpp"
#include "oracles/eeg_reference.hpp"
#include "oracles/eer_bruteforce.hpp"
#include "oracles/finite_diff.hpp"
#include "oracles/mfcc_reference.hpp"

namespace eegsv::acceptance {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

enum class Verdict { kPass, kFail, kNotApplicable };

struct Outcome {
  Verdict verdict = Verdict::kPass;
  std::string summary;
  std::vector<std::string> details;  // printed indented under the verdict line

  void Check(bool ok, const std::string& what) {
    if (!ok) {
      verdict = Verdict::kFail;
      details.push_back("failed: " + what);
    }
  }
};

template <typename... Args>
std::string Format(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

// ---------------------------------------------------------------- AC1

Outcome Ac1() {
  Outcome o;
  o.verdict = Verdict::kNotApplicable;
  o.summary =
      "published EER tables need the unpublished EEG corpus; "
      "covered by the substitute checks AC2-AC9";
  return o;
}

// ---------------------------------------------------------------- AC2

Outcome Ac2() {
  const auto start = Clock::now();
  Outcome o;
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::MatrixXd> seqs;
  for (int i = 0; i < 2 * 3; ++i) {
    Eigen::MatrixXd x(3, 5);
    for (Eigen::Index k = 0; k < x.size(); ++k) x.data()[k] = normal(rng);
    seqs.push_back(x);
  }
  double worst = 0;
  int checked = 0;
  for (auto cell : {CellKind::kLstm, CellKind::kGru}) {
    auto p = InitEncoder<double>({.cell = cell, .input_dim = 5, .hidden = 4, .embed = 4}, 3);
    p.w *= 5.0;  // saturating enough that every gate matters
    p.proj *= 5.0;
    p.b.setRandom();
    for (bool exclusive : {true, false}) {
      const auto r = oracle::CheckEncoderGe2eGradients(p, Ge2eScale{}, seqs, 2, exclusive, 1e-5);
      worst = std::max(worst, r.max_rel_error);
      checked += r.checked;
      o.Check(r.max_rel_error < 1e-4, Format("%s exclusive=%d worst %s rel %.3g",
                                             CellKindName(cell), exclusive, r.worst.c_str(),
                                             r.max_rel_error));
    }
  }
  const double took = Seconds(start);
  o.Check(took < 10.0, Format("runtime %.2f s", took));
  o.summary = Format("%d partials (LSTM+GRU, all weights, w, b): max rel err %.2e < 1e-4, %.2f s",
                     checked, worst, took);
  return o;
}

// ---------------------------------------------------------------- AC3

Outcome Ac3() {
  Outcome o;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> size(1, 50);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const bool coarse = trial % 4 == 0;  // many ties
    const auto draw = [&](int n, double mean) {
      std::vector<double> v(n);
      for (double& x : v) x = coarse ? std::round(2 * (normal(rng) + mean)) / 2 : normal(rng) + mean;
      return v;
    };
    const auto tgt = draw(size(rng), 1.0);
    const auto imp = draw(size(rng), 0.0);
    const double gap = std::abs(Eer(tgt, imp) - oracle::BruteForceEer(tgt, imp));
    worst = std::max(worst, gap);
  }
  o.Check(worst <= 1e-9, Format("oracle gap %.3g", worst));
  const std::vector<double> same = {0.3, 0.7, 0.1};
  const double h1 = Eer({0.9, 0.8}, {0.2, 0.1});
  const double h2 = Eer({0.8, 0.2}, {0.9, 0.1});
  const double h3 = Eer(same, same);
  o.Check(h1 == 0.0 && h2 == 0.5 && h3 == 0.5, Format("hand cases %g %g %g", h1, h2, h3));
  o.summary = Format("200 random sets: max |eer - oracle| = %.1e <= 1e-9; hand cases %g, %g, %g",
                     worst, h1, h2, h3);
  return o;
}

// ---------------------------------------------------------------- AC4

FrameMatrix RandomFrames(int n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(d)));
  FrameMatrix x(n, d);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng);
  return x;
}

double WorstSignedGap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    worst = std::max(worst, std::min((a.col(c) - b.col(c)).cwiseAbs().maxCoeff(),
                                     (a.col(c) + b.col(c)).cwiseAbs().maxCoeff()));
  }
  return worst;
}

Outcome Ac4() {
  Outcome o;
  const FrameMatrix x = RandomFrames(200, 155, 4);
  KpcaOptions full;
  full.max_landmarks = 200;
  const KpcaModel all = FitKpca(x, full);
  const double gap_full =
      WorstSignedGap(all.Project(x), oracle::DenseKpca(x, 30, 3, 1.0, 1.0).scores);

  KpcaOptions sub;
  sub.max_landmarks = 120;
  sub.seed = 9;
  const KpcaModel part = FitKpca(x, sub);
  const double gap_sub = WorstSignedGap(
      part.Project(part.landmarks), oracle::DenseKpca(part.landmarks, 30, 3, 1.0, 1.0).scores);

  KpcaOptions linear = full;
  linear.kernel = {.degree = 1, .gamma = 1.0, .coef0 = 0.0};
  const double gap_lin =
      WorstSignedGap(FitKpca(x, linear).Project(x), oracle::LinearPcaScores(x, 30));

  o.Check(gap_full <= 1e-8, Format("full fit gap %.3g", gap_full));
  o.Check(gap_sub <= 1e-8, Format("subsampled fit gap %.3g", gap_sub));
  o.Check(gap_lin <= 1e-8, Format("degree-1 gap %.3g", gap_lin));
  o.summary = Format(
      "200x155, 30 comps, up to sign: full %.1e, subsampled(120) %.1e, degree-1 vs PCA %.1e",
      gap_full, gap_sub, gap_lin);
  return o;
}

// ---------------------------------------------------------------- AC5

Outcome Ac5() {
  Outcome o;
  const dsp::BiquadCascade bp = dsp::DesignBandpass(0.1, 70, 1000, 4);
  const double lo = bp.MagnitudeDb(0.1), hi = bp.MagnitudeDb(70);
  const double dc = std::abs(bp.Response(0.0));
  o.Check(std::abs(lo + 3) <= 0.5, Format("0.1 Hz at %.3f dB", lo));
  o.Check(std::abs(hi + 3) <= 0.5, Format("70 Hz at %.3f dB", hi));
  o.Check(dc == 0.0, Format("|H(DC)| = %g", dc));

  // Steady-state attenuation of a simulated unit 60 Hz sine.
  const dsp::BiquadCascade notch = dsp::DesignNotch(60, 1000, 30);
  std::vector<double> sine(10000);
  for (std::size_t i = 0; i < sine.size(); ++i) {
    sine[i] = std::sin(2 * std::numbers::pi * 60.0 * static_cast<double>(i) / 1000);
  }
  const std::vector<double> y = dsp::Apply(notch, sine);
  double in = 0, out = 0;
  for (std::size_t i = sine.size() - 2000; i < sine.size(); ++i) {
    in += sine[i] * sine[i];
    out += y[i] * y[i];
  }
  const double atten = 10 * std::log10(in / out);
  o.Check(atten >= 30.0, Format("60 Hz attenuation %.2f dB", atten));
  o.summary = Format("bandpass %.3f dB @0.1 Hz, %.3f dB @70 Hz, |H(0)| = %g; notch %.1f dB @60 Hz",
                     lo, hi, dc, atten);
  return o;
}

// ---------------------------------------------------------------- AC6

Outcome Ac6() {
  Outcome o;
  std::mt19937_64 rng(6);
  const MfccExtractor mfcc;
  const EegFeatureExtractor eeg({.channels = 2});
  std::uniform_int_distribution<int> audio_len(400, 48000), eeg_len(100, 6000);
  int bad_counts = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = audio_len(rng), s = eeg_len(rng);
    if (mfcc.Compute(std::vector<double>(n, 0.01)).num_frames() != 1 + (n - 400) / 160) {
      ++bad_counts;
    }
    if (eeg.Compute(EegSignal::Random(2, s)).num_frames() != 1 + (s - 100) / 10) ++bad_counts;
  }
  o.Check(bad_counts == 0, Format("%d frame-count mismatches", bad_counts));

  std::normal_distribution<double> normal(0.0, 0.05);
  double worst = 0;
  const oracle::MfccReferenceConfig cfg;
  for (int n : {400, 1601, 4000}) {
    std::vector<double> audio(n);
    for (int i = 0; i < n; ++i) {
      audio[i] = 0.3 * std::sin(2 * std::numbers::pi * 440.0 * i / 16000) + normal(rng);
    }
    const FeatureSequence got = mfcc.Compute(audio);
    const auto want = oracle::MfccReference(cfg, audio);
    for (int t = 0; t < got.num_frames(); ++t) {
      for (int q = 0; q < 13; ++q) worst = std::max(worst, std::abs(got.frames(t, q) - want[t][q]));
    }
  }
  o.Check(worst <= 1e-6, Format("MFCC oracle gap %.3g", worst));

  std::vector<double> alt(100);
  for (int i = 0; i < 100; ++i) alt[i] = i % 2 ? -1.0 : 1.0;
  const EegFrameStats st = eeg.FrameStats(alt);
  o.Check(st.rms == 1.0 && st.zcr == 1.0 && st.mwa == 0.0 && st.kurtosis == 1.0,
          Format("alternating frame gave (%g,%g,%g,%g)", st.rms, st.zcr, st.mwa, st.kurtosis));
  o.summary = Format(
      "50 random lengths x2 frame counts exact; MFCC vs oracle %.1e <= 1e-6; "
      "alternating frame (%g,%g,%g,%g)",
      worst, st.rms, st.zcr, st.mwa, st.kurtosis);
  return o;
}

// ---------------------------------------------------------------- AC7

Outcome Ac7() {
  Outcome o;
  const auto w3 = TrainStepsPerEpoch(90, 3);
  const auto w20 = TrainStepsPerEpoch(90, 20);
  o.Check(w3.size() == 30 && w3.back() == 3, "(90,3) windows");
  o.Check(w20 == std::vector<int>({20, 20, 20, 20, 10}), "(90,20) windows");
  // Two perfectly separable test subjects.
  std::vector<std::vector<Eigen::VectorXd>> emb(2);
  for (int s = 0; s < 2; ++s) {
    for (int u = 0; u < 90; ++u) emb[s].push_back(Eigen::Vector2d(s == 0, s == 1));
  }
  const nlohmann::json report = EvaluateEmbeddings(emb, 3).ToJson();
  o.Check(report["num_steps"] == 29 && report["per_step_eer"].size() == 29, "29 test steps");
  o.Check(report["note"] == kTestStepNote, "off-by-one note in report");
  std::ostringstream sizes;
  for (int s : w20) sizes << (sizes.tellp() ? "," : "") << s;
  o.summary = Format("(90,3) -> %zu windows; (90,20) -> [%s]; evaluate(N=3,U=90) -> %d steps + note",
                     w3.size(), sizes.str().c_str(), report["num_steps"].get<int>());
  return o;
}

// ---------------------------------------------------------------- AC8

constexpr int kE2eEpochs = 10;
constexpr int kE2eLandmarks = 1000;

struct E2eStores {
  std::vector<std::string> train, test;
  MemoryFeatureStore mfcc{FeatureKind::kMfcc13};
  MemoryFeatureStore concat{FeatureKind::kConcat43};
};

// 6 train + 2 test subjects, 90 utterances, 10 dB acoustic SNR.
void BuildStores(std::uint64_t seed, int subjects, double min_s, double max_s, E2eStores* out) {
  SynthSpec spec;
  spec.num_subjects = subjects;
  spec.utterances_per_subject = 90;
  spec.noise_db = 10.0;
  spec.seed = seed;
  spec.min_seconds = min_s;
  spec.max_seconds = max_s;
  const SynthGenerator gen(spec);
  const int n_test = gen.NumTestSubjects();
  const FeaturePipeline pipe(spec.channel_count);
  MemoryFeatureStore eeg(FeatureKind::kEeg155);
  for (int s = 0; s < subjects; ++s) {
    (s < subjects - n_test ? out->train : out->test).push_back(gen.SubjectId(s));
    for (int u = 0; u < 90; ++u) {
      const Recording rec = gen.Generate(s, u);
      out->mfcc.Put(pipe.Mfcc(rec));
      eeg.Put(pipe.Eeg(rec));
    }
  }
  // KPCA is fit on training subjects only.
  Eigen::Index rows = 0;
  for (const auto& s : out->train) {
    for (int u = 0; u < 90; ++u) rows += eeg.Get(s, u).num_frames();
  }
  FrameMatrix stacked(rows, NominalDim(FeatureKind::kEeg155));
  rows = 0;
  for (const auto& s : out->train) {
    for (int u = 0; u < 90; ++u) {
      const FrameMatrix f = eeg.Get(s, u).frames;
      stacked.middleRows(rows, f.rows()) = f;
      rows += f.rows();
    }
  }
  KpcaOptions opts;
  opts.max_landmarks = kE2eLandmarks;
  opts.seed = seed;
  const KpcaModel model = FitKpca(stacked, opts);
  for (int s = 0; s < subjects; ++s) {
    for (int u = 0; u < 90; ++u) {
      const FeatureSequence e = eeg.Get(gen.SubjectId(s), u);
      FeatureSequence k;
      k.kind = FeatureKind::kEegKpca30;
      k.subject_id = e.subject_id;
      k.sentence_index = u;
      k.frames = model.Project(e.frames);
      out->concat.Put(AlignConcat(out->mfcc.Get(e.subject_id, u), k));
    }
  }
}

Outcome Ac8() {
  const auto start = Clock::now();
  Outcome o;
  int seeds_ok = 0;
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto seed_start = Clock::now();
    E2eStores stores;
    BuildStores(seed, 8, 2.0, 4.0, &stores);
    bool ok = true;
    std::ostringstream line;
    line << "seed " << seed << ":";
    for (auto cell : {CellKind::kLstm, CellKind::kGru}) {
      for (int n : {3, 10}) {
        double eer[2], ratio[2];
        for (int f = 0; f < 2; ++f) {
          const FeatureStore& store = f == 0 ? static_cast<const FeatureStore&>(stores.mfcc)
                                             : stores.concat;
          TrainConfig cfg;
          cfg.cell = cell;
          cfg.sentences_per_step = n;
          cfg.feature = store.kind();
          cfg.epochs = kE2eEpochs;
          cfg.seed = seed;
          const TrainResult r = Train(stores.train, 90, store, cfg);
          ratio[f] = r.EpochMeanLoss(kE2eEpochs - 1) / r.EpochMeanLoss(0);
          eer[f] = Evaluate(r.checkpoint, stores.test, 90, n, store).mean_eer;
        }
        const bool cell_ok = ratio[0] <= 0.5 && ratio[1] <= 0.5 && eer[1] <= eer[0] &&
                             eer[1] <= 0.15;
        ok = ok && cell_ok;
        line << Format(" %s/N=%d mfcc %.3f concat %.3f (loss x%.2f,x%.2f)%s", CellKindName(cell),
                       n, eer[0], eer[1], ratio[0], ratio[1], cell_ok ? "" : " !");
      }
    }
    seeds_ok += ok ? 1 : 0;
    line << Format(" -> %s, %.0f s", ok ? "holds" : "violated", Seconds(seed_start));
    o.details.push_back(line.str());
  }
  const double took = Seconds(start);
  o.Check(seeds_ok >= 2, Format("criterion held on %d of 3 seeds", seeds_ok));
  o.Check(took <= 1800, Format("runtime %.0f s", took));
  o.summary = Format(
      "%d epochs, 6 train + 2 test subjects, 10 dB SNR: loss ratio <= 0.5, "
      "EER concat43 <= mfcc13 and <= 0.15 held on %d/3 seeds (need 2), %.0f s",
      kE2eEpochs, seeds_ok, took);
  return o;
}

// ---------------------------------------------------------------- AC9

struct RunArtifacts {
  std::string checkpoint, sidecar, report;
};

std::string Slurp(const fs::path& p) {
  const auto bytes = io::ReadFileBytes(p);
  return std::string(bytes.begin(), bytes.end());
}

RunArtifacts PipelineOnce(const fs::path& dir) {
  E2eStores stores;
  BuildStores(5, 4, 0.5, 0.7, &stores);
  TrainConfig cfg;
  cfg.cell = CellKind::kGru;
  cfg.feature = FeatureKind::kConcat43;
  cfg.epochs = 2;
  cfg.hidden = 32;
  cfg.embed = 32;
  cfg.seed = 5;
  const TrainResult r = Train(stores.train, 90, stores.concat, cfg);
  fs::create_directories(dir);
  SaveCheckpoint(r.checkpoint, dir / "model.ckpt");
  const EvalReport rep = Evaluate(LoadCheckpoint(dir / "model.ckpt"), stores.test, 90, 3,
                                  stores.concat, "synth");
  io::WriteTextFile(dir / "report.json", rep.ToJson().dump(2));
  return {Slurp(dir / "model.ckpt"), Slurp(CheckpointSidecar(dir / "model.ckpt")),
          Slurp(dir / "report.json")};
}

Outcome Ac9() {
  Outcome o;
  const fs::path root =
      fs::temp_directory_path() / ("eegsv_acceptance_" + std::to_string(::getpid()));
  const RunArtifacts a = PipelineOnce(root / "a");
  const RunArtifacts b = PipelineOnce(root / "b");
  fs::remove_all(root);
  o.Check(a.checkpoint == b.checkpoint, "checkpoint bytes differ");
  o.Check(a.sidecar == b.sidecar, "checkpoint sidecar differs");
  o.Check(a.report == b.report, "EvalReport JSON differs");
  o.summary = Format(
      "two seeded synth->features->KPCA->train->evaluate runs: checkpoint (%zu B), "
      "sidecar, EvalReport JSON (%zu B) byte-identical",
      a.checkpoint.size(), a.report.size());
  return o;
}

}  // namespace
}  // namespace eegsv::acceptance

int main(int argc, char** argv) {
  using namespace eegsv::acceptance;
  std::set<std::string> only;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--only" && i + 1 < argc) {
      std::stringstream list(argv[++i]);
      for (std::string id; std::getline(list, id, ',');) only.insert(id);
    }
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", Ac1}, {"AC2", Ac2}, {"AC3", Ac3}, {"AC4", Ac4}, {"AC5", Ac5},
      {"AC6", Ac6}, {"AC7", Ac7}, {"AC8", Ac8}, {"AC9", Ac9},
  };
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.verdict = Verdict::kFail;
      o.summary = std::string("threw: ") + e.what();
    }
    const char* tag = o.verdict == Verdict::kPass   ? "PASS"
                      : o.verdict == Verdict::kFail ? "FAIL"
                                                    : "N/A ";
    std::printf("[%s] %s %s\n", tag, id.c_str(), o.summary.c_str());
    for (const auto& d : o.details) std::printf("       %s\n", d.c_str());
    std::fflush(stdout);
    failed += o.verdict == Verdict::kFail ? 1 : 0;
  }
  std::printf("%d criterion(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}
