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

#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eegsv/eegsv.hpp"
#include "json.hpp"

namespace eegsv::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int ExitCodeFor(Errc code) {
  switch (code) {
    case Errc::kParseError:
    case Errc::kInvalidArgument:
    case Errc::kInvalidBand:
    case Errc::kInvalidWindow:
    case Errc::kSplitOverlap:
      return kExitUsage;
    case Errc::kVersionMismatch:
      return kExitCompat;
    default:
      return kExitData;
  }
}

namespace {

constexpr int kReportGrid[] = {3, 5, 7, 10, 15, 20, 30};

class Log {
 public:
  explicit Log(const bool* quiet) : quiet_(quiet) {}
  template <typename... Args>
  void operator()(const char* fmt, Args... args) const {
    if (*quiet_) return;
    if constexpr (sizeof...(Args) == 0) {
      std::fputs(fmt, stderr);
    } else {
      std::fprintf(stderr, fmt, args...);
    }
  }

 private:
  const bool* quiet_;
};

std::vector<std::string> SplitSubjects(const DatasetManifest& m, const std::string& split) {
  if (split == "train") return m.train_subjects;
  if (split == "test") return m.test_subjects;
  return m.subjects;
}

json Provenance(const std::string& command, json config) {
  return {{"tool", "eegsv"}, {"tool_version", kVersion}, {"command", command},
          {"config", std::move(config)}};
}

void WriteJson(const fs::path& path, const json& j) {
  io::WriteTextFile(path, j.dump(2) + "\n");
}

// Runs `work` for every item, collecting failures instead of stopping.
// Returns kExitData and lists the failures when any item failed.
int ForEachItem(const std::vector<std::string>& items,
                const std::function<void(const std::string&)>& work, const Log& log,
                const char* what) {
  std::vector<std::string> failures;
  std::size_t done = 0;
  for (const std::string& item : items) {
    try {
      work(item);
      ++done;
    } catch (const std::exception& e) {
      failures.push_back(e.what());
    }
    if (done % 50 == 0 && done > 0) log("%s: %zu/%zu\n", what, done, items.size());
  }
  log("%s: %zu ok, %zu failed\n", what, done, failures.size());
  if (failures.empty()) return kExitOk;
  std::fprintf(stderr, "%s: %zu item(s) failed:\n", what, failures.size());
  for (const auto& f : failures) std::fprintf(stderr, "  %s\n", f.c_str());
  return kExitData;
}

// ----------------------------------------------------------------- synth-data

struct SynthOptions {
  int subjects = 10;
  int utterances = 90;
  int channels = kDefaultChannels;
  double noise_db = 40.0;
  std::uint64_t seed = 1;
  int test_subjects = -1;
  double min_seconds = 2.0;
  double max_seconds = 4.0;
  std::string out;

  json ToJson() const {
    return {{"subjects", subjects},       {"utterances", utterances},
            {"channels", channels},       {"noise_db", noise_db},
            {"seed", seed},               {"test_subjects", test_subjects},
            {"min_seconds", min_seconds}, {"max_seconds", max_seconds},
            {"out", out}};
  }
};

int CmdSynth(const SynthOptions& o, const Log& log) {
  SynthSpec spec;
  spec.num_subjects = o.subjects;
  spec.utterances_per_subject = o.utterances;
  spec.channel_count = o.channels;
  spec.noise_db = o.noise_db;
  spec.seed = o.seed;
  spec.num_test_subjects = o.test_subjects;
  spec.min_seconds = o.min_seconds;
  spec.max_seconds = o.max_seconds;
  log("synth-data: %d subjects x %d utterances -> %s\n", o.subjects, o.utterances,
      o.out.c_str());
  DatasetManifest m = SynthDataset(spec, o.out);
  m.metadata["provenance"] = Provenance("synth-data", o.ToJson());
  SaveManifest(m, fs::path(o.out) / "manifest.json");
  log("synth-data: wrote %zu recordings\n", m.entries.size());
  return kExitOk;
}

// ----------------------------------------------------------------- preprocess

struct PreprocessOptions {
  std::string manifest;
  std::string out;
  dsp::EegFilterConfig filter;

  json ToJson() const {
    return {{"manifest", manifest},
            {"out", out},
            {"band_low_hz", filter.band_low_hz},
            {"band_high_hz", filter.band_high_hz},
            {"band_order", filter.band_order},
            {"notch_hz", filter.notch_hz},
            {"notch_q", filter.notch_q}};
  }
};

int CmdPreprocess(const PreprocessOptions& o, const Log& log) {
  const DatasetManifest in = LoadManifest(o.manifest);
  const dsp::EegPreprocessor pre(o.filter);
  const fs::path out_dir(o.out);
  DatasetManifest out = in;
  out.root = out_dir;
  std::vector<std::string> keys;
  for (std::size_t i = 0; i < in.entries.size(); ++i) keys.push_back(std::to_string(i));
  const int rc = ForEachItem(
      keys,
      [&](const std::string& key) {
        const std::size_t i = std::stoul(key);
        const ManifestEntry& e = in.entries[i];
        const fs::path src = in.Resolve(e.eeg);
        try {
          const io::EegData raw = io::ReadEeg(src);
          if (raw.channels != in.channel_count) {
            Fail(Errc::kChannelCountMismatch, "unexpected channel count");
          }
          Recording rec;
          rec.eeg = raw;
          const EegSignal filtered = pre(rec.EegAsSignal());
          io::EegData clean{raw.channels, raw.samples, {}};
          clean.data.resize(raw.data.size());
          for (int c = 0; c < raw.channels; ++c) {
            for (int s = 0; s < raw.samples; ++s) {
              clean.data[static_cast<std::size_t>(c) * raw.samples + s] =
                  static_cast<float>(filtered(c, s));
            }
          }
          const std::string rel = "eeg/" + fs::path(e.eeg).filename().string();
          io::WriteEeg(out_dir / rel, clean);
          out.entries[i].eeg = rel;
          out.entries[i].audio = fs::absolute(in.Resolve(e.audio)).lexically_normal().string();
        } catch (const Error& err) {
          Fail(err.code(), src.string() + ": " + err.what());
        }
      },
      log, "preprocess");
  if (rc != kExitOk) return rc;
  out.metadata["preprocessed"] = Provenance("preprocess", o.ToJson());
  SaveManifest(out, out_dir / "manifest.json");
  return kExitOk;
}

// -------------------------------------------------------------------- extract

struct ExtractOptions {
  std::string manifest;
  std::string kind = "mfcc13";
  std::string out;
  std::string split = "all";
  bool prefiltered = false;

  json ToJson() const {
    return {{"manifest", manifest}, {"kind", kind},        {"out", out},
            {"split", split},       {"prefiltered", prefiltered}};
  }
};

std::vector<std::string> UtteranceKeys(const DatasetManifest& m,
                                       const std::vector<std::string>& subjects) {
  std::vector<std::string> keys;
  for (const auto& s : subjects) {
    for (int u = 0; u < m.utterances_per_subject; ++u) keys.push_back(s + "/" + std::to_string(u));
  }
  return keys;
}

std::pair<std::string, int> ParseKey(const std::string& key) {
  const auto slash = key.rfind('/');
  return {key.substr(0, slash), std::stoi(key.substr(slash + 1))};
}

int CmdExtract(const ExtractOptions& o, const Log& log) {
  const FeatureKind kind = ParseFeatureKind(o.kind);
  const DatasetManifest m = LoadManifest(o.manifest);
  const FeaturePipeline pipe(m.channel_count);
  const fs::path out_dir(o.out);
  fs::create_directories(out_dir);
  const int rc = ForEachItem(
      UtteranceKeys(m, SplitSubjects(m, o.split)),
      [&](const std::string& key) {
        const auto [subject, sentence] = ParseKey(key);
        const ManifestEntry& e = m.Find(subject, sentence);
        try {
          const Recording rec = LoadRecording(m, subject, sentence);
          const FeatureSequence seq =
              kind == FeatureKind::kMfcc13 ? pipe.Mfcc(rec) : pipe.Eeg(rec, !o.prefiltered);
          WriteFeatures(out_dir / FeatureFileName(subject, sentence, kind), seq);
        } catch (const Error& err) {
          Fail(err.code(), m.Resolve(kind == FeatureKind::kMfcc13 ? e.audio : e.eeg).string() +
                               ": " + err.what());
        }
      },
      log, "extract");
  WriteJson(out_dir / (std::string(FeatureKindName(kind)) + ".json"),
            Provenance("extract", o.ToJson()));
  return rc;
}

// ------------------------------------------------------------------- fit-kpca

struct FitKpcaOptions {
  std::string manifest;
  std::string features;
  std::string out;
  std::string variance_csv;
  int components = 30;
  int max_landmarks = 2000;
  int degree = 3;
  double gamma = 1.0;
  double coef0 = 1.0;
  std::uint64_t seed = 0;

  json ToJson() const {
    return {{"manifest", manifest},       {"features", features},
            {"out", out},                 {"variance_csv", variance_csv},
            {"components", components},   {"max_landmarks", max_landmarks},
            {"degree", degree},           {"gamma", gamma},
            {"coef0", coef0},             {"seed", seed}};
  }
};

int CmdFitKpca(FitKpcaOptions o, const Log& log) {
  const DatasetManifest m = LoadManifest(o.manifest);
  const DirectoryFeatureStore store(o.features, FeatureKind::kEeg155);
  std::vector<FrameMatrix> blocks;
  Eigen::Index rows = 0;
  for (const auto& s : m.train_subjects) {
    for (int u = 0; u < m.utterances_per_subject; ++u) {
      blocks.push_back(store.Get(s, u).frames);
      rows += blocks.back().rows();
    }
  }
  if (blocks.empty()) Fail(Errc::kInsufficientData, "no training subjects in manifest");
  FrameMatrix all(rows, blocks.front().cols());
  rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != all.cols()) Fail(Errc::kDimMismatch, "EEG feature dims differ");
    all.middleRows(rows, b.rows()) = b;
    rows += b.rows();
  }
  log("fit-kpca: %lld frames from %zu train subjects\n", static_cast<long long>(all.rows()),
      m.train_subjects.size());
  KpcaOptions opts;
  opts.components = o.components;
  opts.max_landmarks = o.max_landmarks;
  opts.seed = o.seed;
  opts.kernel = {o.degree, o.gamma, o.coef0};
  const KpcaModel model = FitKpca(all, opts);
  SaveKpca(model, o.out);
  if (o.variance_csv.empty()) {
    o.variance_csv = (fs::path(o.out).parent_path() / "explained_variance.csv").string();
  }
  std::ostringstream csv;
  csv.precision(17);
  csv << "component,ratio,cumulative\n";
  for (const auto& r : ExplainedVarianceTable(model)) {
    csv << r.component << ',' << r.ratio << ',' << r.cumulative << '\n';
  }
  io::WriteTextFile(o.variance_csv, csv.str());
  json meta = Provenance("fit-kpca", o.ToJson());
  meta["frames"] = all.rows();
  meta["landmarks"] = model.num_landmarks();
  meta["train_subjects"] = m.train_subjects;
  WriteJson(o.out + ".json", meta);
  log("fit-kpca: %d components, cumulative ratio %.4f\n", model.components(),
      ExplainedVarianceTable(model).back().cumulative);
  return kExitOk;
}

// -------------------------------------------------------------------- project

struct ProjectOptions {
  std::string manifest;
  std::string model;
  std::string features;
  std::string out;
  std::string split = "all";

  json ToJson() const {
    return {{"manifest", manifest}, {"model", model}, {"features", features},
            {"out", out},           {"split", split}};
  }
};

int CmdProject(ProjectOptions o, const Log& log) {
  const DatasetManifest m = LoadManifest(o.manifest);
  const KpcaModel model = LoadKpca(o.model);
  if (o.out.empty()) o.out = o.features;
  const DirectoryFeatureStore store(o.features, FeatureKind::kEeg155);
  const fs::path out_dir(o.out);
  const int rc = ForEachItem(
      UtteranceKeys(m, SplitSubjects(m, o.split)),
      [&](const std::string& key) {
        const auto [subject, sentence] = ParseKey(key);
        const FeatureSequence eeg = store.Get(subject, sentence);
        FeatureSequence seq;
        seq.kind = FeatureKind::kEegKpca30;
        seq.subject_id = subject;
        seq.sentence_index = sentence;
        seq.frames = model.Project(eeg.frames);
        WriteFeatures(out_dir / FeatureFileName(subject, sentence, seq.kind), seq);
      },
      log, "project");
  WriteJson(out_dir / (std::string(FeatureKindName(FeatureKind::kEegKpca30)) + ".json"),
            Provenance("project", o.ToJson()));
  return rc;
}

// ---------------------------------------------------------------------- train

struct TrainOptions {
  std::string manifest;
  std::string features;
  std::string kind = "mfcc13";
  std::string cell = "lstm";
  std::string out;
  std::string loss_csv;
  TrainConfig train;
  bool inclusive = false;

  json ToJson() const {
    return {{"manifest", manifest}, {"features", features}, {"out", out},
            {"loss_csv", loss_csv}, {"train", train.ToJson()}};
  }
};

int CmdTrain(TrainOptions o, const Log& log) {
  o.train.feature = ParseFeatureKind(o.kind);
  o.train.cell = ParseCellKind(o.cell);
  o.train.exclusive_centroids = !o.inclusive;
  if (o.loss_csv.empty()) o.loss_csv = o.out + ".loss.csv";
  const DatasetManifest m = LoadManifest(o.manifest);
  const DirectoryFeatureStore store(o.features, o.train.feature);
  log("train: %s %s N=%d, %d epochs on %zu subjects\n", o.cell.c_str(), o.kind.c_str(),
      o.train.sentences_per_step, o.train.epochs, m.train_subjects.size());
  TrainResult result = Train(m, store, o.train, [&](int epoch, double loss) {
    log("epoch %d/%d mean loss %.6f\n", epoch + 1, o.train.epochs, loss);
  });
  result.checkpoint.config["provenance"] = Provenance("train", o.ToJson());
  SaveCheckpoint(result.checkpoint, o.out);
  io::WriteTextFile(o.loss_csv, LossLogCsv(result.loss_log));
  return kExitOk;
}

// ------------------------------------------------------------------- evaluate

struct EvaluateOptions {
  std::string manifest;
  std::string features;
  std::string checkpoint;
  std::string kind;
  std::string dataset;
  std::string out;
  int sentences = 3;

  json ToJson() const {
    return {{"manifest", manifest}, {"features", features}, {"checkpoint", checkpoint},
            {"kind", kind},         {"dataset", dataset},   {"out", out},
            {"sentences_per_step", sentences}};
  }
};

int CmdEvaluate(EvaluateOptions o, const Log& log) {
  const DatasetManifest m = LoadManifest(o.manifest);
  const Checkpoint ckpt = LoadCheckpoint(o.checkpoint);
  const FeatureKind kind = o.kind.empty() ? ckpt.feature : ParseFeatureKind(o.kind);
  const DirectoryFeatureStore store(o.features, kind);
  if (m.test_subjects.size() < 2) Fail(Errc::kInsufficientData, "need two test subjects");
  const FeatureSequence probe = store.Get(m.test_subjects[0], 0);
  if (kind == ckpt.feature && probe.dim() != ckpt.encoder.shape.input_dim) {
    Fail(Errc::kVersionMismatch, "checkpoint expects " +
                                     std::to_string(ckpt.encoder.shape.input_dim) +
                                     "-dim features, found " + std::to_string(probe.dim()));
  }
  if (o.dataset.empty()) o.dataset = m.metadata.value("generator", std::string("dataset"));
  EvalReport report =
      Evaluate(ckpt, m.test_subjects, m.utterances_per_subject, o.sentences, store, o.dataset);
  report.config["provenance"] = Provenance("evaluate", o.ToJson());
  if (!o.out.empty()) WriteJson(o.out, report.ToJson());
  log("evaluate: %zu steps, mean EER %.4f\n", report.per_step_eer.size(), report.mean_eer);
  std::cout << report.CsvRow() << "\n";
  return kExitOk;
}

// --------------------------------------------------------------------- report

struct ReportOptions {
  std::vector<std::string> reports;
  std::vector<std::string> loss_logs;
  std::string cell;
  std::string out;

  json ToJson() const {
    return {{"reports", reports}, {"loss_logs", loss_logs}, {"cell", cell}, {"out", out}};
  }
};

std::vector<fs::path> ExpandJsonInputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.path().extension() == ".json") found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      if (!fs::exists(in)) Fail(Errc::kMissingFile, in);
      out.emplace_back(in);
    }
  }
  return out;
}

std::string Percent(double eer) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", 100.0 * eer);
  return buf;
}

int CmdReport(const ReportOptions& o, const Log& log) {
  if (o.reports.empty() && o.loss_logs.empty()) {
    Fail(Errc::kInvalidArgument, "report needs --reports and/or --loss-logs");
  }
  const fs::path out_dir(o.out);
  fs::create_directories(out_dir);

  if (!o.reports.empty()) {
    std::map<std::pair<int, std::string>, double> cells;
    std::ostringstream rows;
    rows << "N,features,cell,dataset,eer_pct\n";
    for (const fs::path& path : ExpandJsonInputs(o.reports)) {
      const auto bytes = io::ReadFileBytes(path);
      const json j = json::parse(bytes.begin(), bytes.end(), nullptr, false);
      if (j.is_discarded() || !j.contains("per_step_eer")) continue;  // not an EvalReport
      EvalReport r;
      try {
        r = EvalReport::FromJson(j);
      } catch (const json::exception& e) {
        Fail(Errc::kFormatError, path.string() + ": " + e.what());
      }
      const std::string cell = r.config.value("cell", std::string());
      if (!o.cell.empty() && cell != o.cell) continue;
      const int n = r.config.value("sentences_per_step", 0);
      const std::string features = r.config.value("features", std::string());
      if (!cells.emplace(std::make_pair(n, features), r.mean_eer).second) {
        Fail(Errc::kInvalidArgument, "two reports for N=" + std::to_string(n) + " " + features +
                                         "; filter with --cell");
      }
      rows << r.CsvRow() << "\n";
    }
    std::ostringstream table;
    table << "N,mfcc13,concat43\n";
    for (int n : kReportGrid) {
      table << n;
      for (const char* f : {"mfcc13", "concat43"}) {
        const auto it = cells.find({n, f});
        table << ',' << (it == cells.end() ? std::string() : Percent(it->second));
      }
      table << '\n';
    }
    io::WriteTextFile(out_dir / "eer_table.csv", table.str());
    io::WriteTextFile(out_dir / "eer_rows.csv", rows.str());
    log("report: %zu evaluation reports tabulated\n", cells.size());
  }

  if (!o.loss_logs.empty()) {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> curves;
    std::size_t epochs = 0;
    for (const auto& path : o.loss_logs) {
      const auto bytes = io::ReadFileBytes(path);
      std::istringstream in(std::string(bytes.begin(), bytes.end()));
      std::string line;
      std::getline(in, line);
      if (line != "epoch,step,loss") Fail(Errc::kFormatError, path + ": not a loss log");
      std::vector<double> sum;
      std::vector<int> count;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        int epoch = 0, step = 0;
        double loss = 0;
        if (std::sscanf(line.c_str(), "%d,%d,%lf", &epoch, &step, &loss) != 3 || epoch < 0) {
          Fail(Errc::kFormatError, path + ": bad row '" + line + "'");
        }
        if (static_cast<std::size_t>(epoch) >= sum.size()) {
          sum.resize(epoch + 1, 0.0);
          count.resize(epoch + 1, 0);
        }
        sum[epoch] += loss;
        ++count[epoch];
      }
      for (std::size_t e = 0; e < sum.size(); ++e) sum[e] /= std::max(count[e], 1);
      epochs = std::max(epochs, sum.size());
      labels.push_back(fs::path(path).stem().string());
      curves.push_back(std::move(sum));
    }
    std::ostringstream csv;
    csv.precision(10);
    csv << "epoch";
    for (const auto& l : labels) csv << ',' << l;
    csv << '\n';
    for (std::size_t e = 0; e < epochs; ++e) {
      csv << e;
      for (const auto& c : curves) {
        csv << ',';
        if (e < c.size()) csv << c[e];
      }
      csv << '\n';
    }
    io::WriteTextFile(out_dir / "loss_curve.csv", csv.str());
  }
  WriteJson(out_dir / "report.json", Provenance("report", o.ToJson()));
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args) {
  CLI::App app{"EEG-assisted speaker verification: data, features, training, evaluation",
               "eegsv"};
  app.set_config("--config", "", "TOML file with per-command sections; flags override it");
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();  // -q and --config also work after the subcommand
  app.allow_config_extras(CLI::config_extras_mode::error);  // typos in --config fail
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress progress output");
  const Log log(&quiet);
  const auto kinds_in = CLI::IsMember({"mfcc13", "eeg155"});
  const auto kinds_train = CLI::IsMember({"mfcc13", "eeg155", "eeg_kpca30", "concat43"});
  const auto splits = CLI::IsMember({"all", "train", "test"});

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth-data", "Generate a synthetic speech+EEG corpus");
  synth_cmd->add_option("--subjects", synth.subjects, "Number of subjects")
      ->capture_default_str();
  synth_cmd->add_option("--utterances", synth.utterances, "Utterances per subject")
      ->capture_default_str();
  synth_cmd->add_option("--channels", synth.channels, "EEG channels")->capture_default_str();
  synth_cmd->add_option("--noise-db", synth.noise_db, "Acoustic SNR in dB")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--test-subjects", synth.test_subjects,
                        "Held-out subjects (-1: 2 when there are at least 4)")
      ->capture_default_str();
  synth_cmd->add_option("--min-seconds", synth.min_seconds, "Shortest utterance")
      ->capture_default_str();
  synth_cmd->add_option("--max-seconds", synth.max_seconds, "Longest utterance")
      ->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();

  PreprocessOptions pre;
  auto* pre_cmd = app.add_subcommand("preprocess", "Write band-pass + notch filtered EEG");
  pre_cmd->add_option("--manifest", pre.manifest, "Input manifest.json")->required();
  pre_cmd->add_option("--out", pre.out, "Output directory")->required();
  pre_cmd->add_option("--band-low", pre.filter.band_low_hz, "Band-pass low edge (Hz)")
      ->capture_default_str();
  pre_cmd->add_option("--band-high", pre.filter.band_high_hz, "Band-pass high edge (Hz)")
      ->capture_default_str();
  pre_cmd->add_option("--band-order", pre.filter.band_order, "Band-pass order")
      ->capture_default_str();
  pre_cmd->add_option("--notch", pre.filter.notch_hz, "Notch frequency (Hz)")
      ->capture_default_str();
  pre_cmd->add_option("--notch-q", pre.filter.notch_q, "Notch quality factor")
      ->capture_default_str();

  ExtractOptions ext;
  auto* ext_cmd = app.add_subcommand("extract", "Extract MFCC13 or EEG155 feature files");
  ext_cmd->add_option("--manifest", ext.manifest, "Dataset manifest.json")->required();
  ext_cmd->add_option("--kind", ext.kind, "Feature kind")->check(kinds_in)->capture_default_str();
  ext_cmd->add_option("--out", ext.out, "Feature directory")->required();
  ext_cmd->add_option("--split", ext.split, "Subjects to process")->check(splits)
      ->capture_default_str();
  ext_cmd->add_flag("--prefiltered", ext.prefiltered,
                    "EEG was already filtered by the preprocess command");

  FitKpcaOptions fit;
  auto* fit_cmd = app.add_subcommand("fit-kpca", "Fit kernel PCA on training EEG155 frames");
  fit_cmd->add_option("--manifest", fit.manifest, "Dataset manifest.json")->required();
  fit_cmd->add_option("--features", fit.features, "Directory with EEG155 files")->required();
  fit_cmd->add_option("--out", fit.out, "Model file")->required();
  fit_cmd->add_option("--variance-csv", fit.variance_csv,
                      "Explained-variance CSV (default: next to the model)");
  fit_cmd->add_option("--components", fit.components, "Retained components")
      ->capture_default_str();
  fit_cmd->add_option("--max-landmarks", fit.max_landmarks, "Frames used for the fit")
      ->capture_default_str();
  fit_cmd->add_option("--degree", fit.degree, "Polynomial kernel degree")->capture_default_str();
  fit_cmd->add_option("--gamma", fit.gamma, "Kernel gamma")->capture_default_str();
  fit_cmd->add_option("--coef0", fit.coef0, "Kernel coef0")->capture_default_str();
  fit_cmd->add_option("--seed", fit.seed, "Landmark sampling seed")->capture_default_str();

  ProjectOptions proj;
  auto* proj_cmd = app.add_subcommand("project", "Project EEG155 files to EEG_KPCA30");
  proj_cmd->add_option("--manifest", proj.manifest, "Dataset manifest.json")->required();
  proj_cmd->add_option("--model", proj.model, "KPCA model file")->required();
  proj_cmd->add_option("--features", proj.features, "Directory with EEG155 files")->required();
  proj_cmd->add_option("--out", proj.out, "Output directory (default: --features)");
  proj_cmd->add_option("--split", proj.split, "Subjects to project")->check(splits)
      ->capture_default_str();

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Train the d-vector encoder with GE2E loss");
  train_cmd->add_option("--manifest", train.manifest, "Dataset manifest.json")->required();
  train_cmd->add_option("--features", train.features, "Feature directory")->required();
  train_cmd->add_option("--kind,--feature-kind", train.kind, "Input features")
      ->check(kinds_train)->capture_default_str();
  train_cmd->add_option("--cell", train.cell, "Recurrent cell")
      ->check(CLI::IsMember({"lstm", "gru"}))->capture_default_str();
  train_cmd->add_option("--sentences,-N", train.train.sentences_per_step,
                        "Sentences per training step")
      ->check(CLI::PositiveNumber)->capture_default_str();
  train_cmd->add_option("--epochs", train.train.epochs, "Epochs")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  train_cmd->add_option("--lr", train.train.learning_rate, "Learning rate")
      ->check(CLI::PositiveNumber)->capture_default_str();
  train_cmd->add_option("--clip", train.train.grad_clip_norm, "Global gradient-norm clip")
      ->check(CLI::PositiveNumber)->capture_default_str();
  train_cmd->add_option("--seed", train.train.seed, "Random seed")->capture_default_str();
  train_cmd->add_option("--hidden", train.train.hidden, "Recurrent units")
      ->check(CLI::PositiveNumber)->capture_default_str();
  train_cmd->add_option("--embed", train.train.embed, "d-vector size")
      ->check(CLI::PositiveNumber)->capture_default_str();
  train_cmd->add_flag("--inclusive-centroids", train.inclusive,
                      "Do not leave the utterance out of its own centroid");
  train_cmd->add_option("--out", train.out, "Checkpoint file")->required();
  train_cmd->add_option("--loss-csv", train.loss_csv, "Loss log (default: <out>.loss.csv)");

  EvaluateOptions eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "Rolling enrollment/evaluation EER");
  eval_cmd->add_option("--manifest", eval.manifest, "Dataset manifest.json")->required();
  eval_cmd->add_option("--features", eval.features, "Feature directory")->required();
  eval_cmd->add_option("--checkpoint", eval.checkpoint, "Checkpoint file")->required();
  eval_cmd->add_option("--kind,--feature-kind", eval.kind,
                       "Feature kind (default: the checkpoint's)")->check(kinds_train);
  eval_cmd->add_option("--sentences,-N", eval.sentences, "Sentences per window")
      ->check(CLI::PositiveNumber)->capture_default_str();
  eval_cmd->add_option("--dataset", eval.dataset, "Dataset tag for the report");
  eval_cmd->add_option("--out", eval.out, "EvalReport JSON");

  ReportOptions rep;
  auto* rep_cmd = app.add_subcommand("report", "Tabulate EER reports and loss curves");
  rep_cmd->add_option("--reports", rep.reports, "EvalReport JSON files or directories");
  rep_cmd->add_option("--loss-logs", rep.loss_logs, "Loss CSV files from train");
  rep_cmd->add_option("--cell", rep.cell, "Only use reports of this cell")
      ->check(CLI::IsMember({"lstm", "gru"}));
  rep_cmd->add_option("--out", rep.out, "Output directory")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, std::cout, std::cerr);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*synth_cmd) return CmdSynth(synth, log);
    if (*pre_cmd) return CmdPreprocess(pre, log);
    if (*ext_cmd) return CmdExtract(ext, log);
    if (*fit_cmd) return CmdFitKpca(fit, log);
    if (*proj_cmd) return CmdProject(proj, log);
    if (*train_cmd) return CmdTrain(train, log);
    if (*eval_cmd) return CmdEvaluate(eval, log);
    if (*rep_cmd) return CmdReport(rep, log);
  } catch (const Error& e) {
    std::fprintf(stderr, "eegsv: %s\n", e.what());
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "eegsv: %s\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}

int Run(int argc, const char* const* argv) {
  return Run(std::vector<std::string>(argv, argv + argc));
}

}  // namespace eegsv::cli
