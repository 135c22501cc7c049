// src/experiment/manifest.cc

// Copyright 2026  csid authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "csid/experiment/manifest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "csid/error.h"

namespace csid {

namespace {

std::vector<std::string> SplitCsvRow(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

std::vector<std::string> DatasetManifest::Speakers() const {
  std::set<std::string> unique;
  for (const auto& e : entries) unique.insert(e.speaker_id);
  return {unique.begin(), unique.end()};
}

int DatasetManifest::SpeakerIndex(const std::string& speaker_id) const {
  const auto speakers = Speakers();
  const auto it =
      std::lower_bound(speakers.begin(), speakers.end(), speaker_id);
  if (it == speakers.end() || *it != speaker_id)
    throw std::invalid_argument("unknown speaker id: " + speaker_id);
  return static_cast<int>(it - speakers.begin());
}

std::vector<const ManifestEntry*> DatasetManifest::SplitEntries(
    Split split) const {
  std::vector<const ManifestEntry*> out;
  for (const auto& e : entries)
    if (e.split == split) out.push_back(&e);
  return out;
}

std::string DatasetManifest::ResolveWavPath(const ManifestEntry& entry) const {
  std::filesystem::path p(entry.wav_path);
  if (p.is_absolute() || root_dir.empty()) return entry.wav_path;
  return (std::filesystem::path(root_dir) / p).string();
}

DatasetManifest LoadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path);
  DatasetManifest manifest;
  manifest.root_dir = std::filesystem::path(path).parent_path().string();

  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const size_t eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        key.erase(0, key.find_first_not_of(' '));
        key.erase(key.find_last_not_of(' ') + 1);
        const std::string value = line.substr(eq + 1);
        if (key == "corpus") manifest.corpus = value;
        if (key == "sample_rate") manifest.sample_rate = std::stoi(value);
      }
      continue;
    }
    if (!header_seen) {
      if (line != "speaker_id,utterance_id,wav_path,split")
        throw std::runtime_error("bad manifest header in " + path);
      header_seen = true;
      continue;
    }
    const auto fields = SplitCsvRow(line);
    if (fields.size() != 4)
      throw std::runtime_error("bad manifest row in " + path + ": " + line);
    ManifestEntry entry;
    entry.speaker_id = fields[0];
    entry.utterance_id = fields[1];
    entry.wav_path = fields[2];
    if (fields[3] == "train")
      entry.split = Split::kTrain;
    else if (fields[3] == "test")
      entry.split = Split::kTest;
    else
      throw std::runtime_error("bad split '" + fields[3] + "' in " + path);
    manifest.entries.push_back(std::move(entry));
  }
  if (!header_seen) throw std::runtime_error("empty manifest: " + path);
  ValidateManifest(manifest);
  return manifest;
}

void SaveManifest(const DatasetManifest& manifest, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  if (!manifest.corpus.empty()) out << "# corpus=" << manifest.corpus << "\n";
  if (manifest.sample_rate > 0)
    out << "# sample_rate=" << manifest.sample_rate << "\n";
  out << "speaker_id,utterance_id,wav_path,split\n";
  for (const auto& e : manifest.entries)
    out << e.speaker_id << "," << e.utterance_id << "," << e.wav_path << ","
        << (e.split == Split::kTrain ? "train" : "test") << "\n";
  if (!out) throw IoError("write failure: " + path);
}

void ValidateManifest(const DatasetManifest& manifest) {
  if (manifest.entries.empty())
    throw std::runtime_error("manifest has no entries");
  std::set<std::pair<std::string, std::string>> pairs;
  std::set<std::string> with_train, with_test;
  for (const auto& e : manifest.entries) {
    if (e.speaker_id.empty() || e.utterance_id.empty() || e.wav_path.empty())
      throw std::runtime_error("manifest row with empty field");
    if (!pairs.emplace(e.speaker_id, e.utterance_id).second)
      throw std::runtime_error("duplicate (speaker, utterance) pair: " +
                               e.speaker_id + "/" + e.utterance_id);
    (e.split == Split::kTrain ? with_train : with_test).insert(e.speaker_id);
  }
  for (const auto& s : manifest.Speakers()) {
    if (!with_train.count(s))
      throw std::runtime_error("speaker " + s + " has no train utterances");
    if (!with_test.count(s))
      throw std::runtime_error("speaker " + s + " has no test utterances");
  }
}

}  // namespace csid
