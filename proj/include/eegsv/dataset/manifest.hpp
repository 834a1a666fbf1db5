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

#ifndef EEGSV_DATASET_MANIFEST_HPP_
#define EEGSV_DATASET_MANIFEST_HPP_

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eegsv/error.hpp"
#include "eegsv/io/binary.hpp"
#include "eegsv/io/eeg_file.hpp"
#include "eegsv/io/wav.hpp"
#include "eegsv/types.hpp"
#include "json.hpp"

namespace eegsv {

/// One subject's utterance: 16 kHz mono audio plus channel-major 1 kHz EEG.
struct Recording {
  std::string subject_id;
  int sentence_index = 0;
  std::vector<float> audio;
  io::EegData eeg;
  double noise_level_db = 0;

  double audio_seconds() const { return static_cast<double>(audio.size()) / kAudioRate; }
  double eeg_seconds() const { return static_cast<double>(eeg.samples) / kEegRate; }

  EegSignal EegAsSignal() const {
    EegSignal out(eeg.channels, eeg.samples);
    for (int c = 0; c < eeg.channels; ++c) {
      for (int s = 0; s < eeg.samples; ++s) out(c, s) = eeg.at(c, s);
    }
    return out;
  }
};

struct ManifestEntry {
  std::string subject;
  int sentence = 0;
  std::string audio;  // relative to the manifest directory unless absolute
  std::string eeg;
};

struct DatasetManifest {
  std::filesystem::path root;
  int channel_count = kDefaultChannels;
  int utterances_per_subject = 90;
  std::vector<std::string> subjects;  // order of first appearance
  std::vector<std::string> train_subjects;
  std::vector<std::string> test_subjects;
  std::vector<ManifestEntry> entries;
  nlohmann::json metadata = nlohmann::json::object();

  std::filesystem::path Resolve(const std::string& p) const {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : root / path;
  }

  const ManifestEntry& Find(const std::string& subject, int sentence) const {
    for (const auto& e : entries) {
      if (e.subject == subject && e.sentence == sentence) return e;
    }
    Fail(Errc::kNotFound,
         "no entry for subject " + subject + " sentence " + std::to_string(sentence));
  }

  bool HasSubject(const std::string& subject) const {
    return std::find(subjects.begin(), subjects.end(), subject) != subjects.end();
  }
};

/// Structural checks; with `check_files` also requires every referenced file
/// to exist.
inline void ValidateManifest(const DatasetManifest& m, bool check_files) {
  if (m.channel_count <= 0) Fail(Errc::kParseError, "channel_count must be positive");
  if (m.utterances_per_subject <= 0) {
    Fail(Errc::kParseError, "utterances_per_subject must be positive");
  }
  for (const auto& s : m.train_subjects) {
    if (std::find(m.test_subjects.begin(), m.test_subjects.end(), s) !=
        m.test_subjects.end()) {
      Fail(Errc::kSplitOverlap, "subject " + s + " is in both train and test splits");
    }
  }
  std::set<std::pair<std::string, int>> seen;
  std::map<std::string, int> per_subject;
  for (const auto& e : m.entries) {
    if (e.sentence < 0 || e.sentence >= m.utterances_per_subject) {
      Fail(Errc::kParseError, "sentence index " + std::to_string(e.sentence) +
                                  " out of range for subject " + e.subject);
    }
    if (!seen.emplace(e.subject, e.sentence).second) {
      Fail(Errc::kParseError, "duplicate entry for " + e.subject + "/" +
                                  std::to_string(e.sentence));
    }
    ++per_subject[e.subject];
  }
  for (const auto& [subject, count] : per_subject) {
    if (count != m.utterances_per_subject) {
      Fail(Errc::kParseError, "subject " + subject + " has " + std::to_string(count) +
                                  " utterances, expected " +
                                  std::to_string(m.utterances_per_subject));
    }
  }
  for (const auto* split : {&m.train_subjects, &m.test_subjects}) {
    for (const auto& s : *split) {
      if (!per_subject.count(s)) {
        Fail(Errc::kParseError, "split subject " + s + " has no entries");
      }
    }
  }
  if (check_files) {
    for (const auto& e : m.entries) {
      for (const auto* p : {&e.audio, &e.eeg}) {
        if (!std::filesystem::exists(m.Resolve(*p))) {
          Fail(Errc::kMissingFile, m.Resolve(*p).string());
        }
      }
    }
  }
}

inline nlohmann::json ManifestToJson(const DatasetManifest& m) {
  nlohmann::json j;
  j["channel_count"] = m.channel_count;
  j["utterances_per_subject"] = m.utterances_per_subject;
  j["train_subjects"] = m.train_subjects;
  j["test_subjects"] = m.test_subjects;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : m.entries) {
    entries.push_back(
        {{"subject", e.subject}, {"sentence", e.sentence}, {"audio", e.audio}, {"eeg", e.eeg}});
  }
  j["entries"] = std::move(entries);
  if (!m.metadata.empty()) j["metadata"] = m.metadata;
  return j;
}

inline DatasetManifest ManifestFromJson(const nlohmann::json& j,
                                        const std::filesystem::path& root) {
  DatasetManifest m;
  m.root = root;
  try {
    m.channel_count = j.value("channel_count", kDefaultChannels);
    m.utterances_per_subject = j.value("utterances_per_subject", 90);
    m.train_subjects = j.at("train_subjects").get<std::vector<std::string>>();
    m.test_subjects = j.at("test_subjects").get<std::vector<std::string>>();
    for (const auto& e : j.at("entries")) {
      ManifestEntry entry;
      entry.subject = e.at("subject").get<std::string>();
      entry.sentence = e.at("sentence").get<int>();
      entry.audio = e.at("audio").get<std::string>();
      entry.eeg = e.at("eeg").get<std::string>();
      if (!m.HasSubject(entry.subject)) m.subjects.push_back(entry.subject);
      m.entries.push_back(std::move(entry));
    }
    if (j.contains("metadata")) m.metadata = j.at("metadata");
  } catch (const nlohmann::json::exception& ex) {
    Fail(Errc::kParseError, std::string("manifest schema: ") + ex.what());
  }
  return m;
}

inline DatasetManifest LoadManifest(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) Fail(Errc::kMissingFile, path.string());
  const std::vector<char> bytes = io::ReadFileBytes(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::parse_error& ex) {
    Fail(Errc::kParseError, path.string() + ": " + ex.what());
  }
  DatasetManifest m = ManifestFromJson(j, path.parent_path());
  ValidateManifest(m, /*check_files=*/true);
  return m;
}

inline void SaveManifest(const DatasetManifest& m, const std::filesystem::path& path) {
  io::WriteTextFile(path, ManifestToJson(m).dump(2) + "\n");
}

inline void SaveRecording(const Recording& rec, const std::filesystem::path& audio_path,
                          const std::filesystem::path& eeg_path) {
  io::WriteWav(audio_path, rec.audio, kAudioRate);
  io::WriteEeg(eeg_path, rec.eeg);
}

inline Recording LoadRecording(const DatasetManifest& m, const std::string& subject,
                               int sentence) {
  const ManifestEntry& entry = m.Find(subject, sentence);
  Recording rec;
  rec.subject_id = subject;
  rec.sentence_index = sentence;
  if (m.metadata.contains("noise_db")) rec.noise_level_db = m.metadata["noise_db"].get<double>();
  io::WavData wav = io::ReadWav(m.Resolve(entry.audio));
  if (wav.sample_rate != kAudioRate) {
    Fail(Errc::kRateMismatch, m.Resolve(entry.audio).string() + " is sampled at " +
                                  std::to_string(wav.sample_rate) + " Hz, expected 16000");
  }
  rec.audio = std::move(wav.samples);
  rec.eeg = io::ReadEeg(m.Resolve(entry.eeg));
  if (rec.eeg.channels != m.channel_count) {
    Fail(Errc::kChannelCountMismatch,
         m.Resolve(entry.eeg).string() + " has " + std::to_string(rec.eeg.channels) +
             " channels, manifest says " + std::to_string(m.channel_count));
  }
  if (std::abs(rec.audio_seconds() - rec.eeg_seconds()) > 0.050) {
    Fail(Errc::kRateMismatch, "audio and EEG durations of " + subject + "/" +
                                  std::to_string(sentence) + " differ by more than 50 ms");
  }
  return rec;
}

}  // namespace eegsv

#endif  // EEGSV_DATASET_MANIFEST_HPP_
