// include/csid/experiment/manifest.h

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

#ifndef CSID_EXPERIMENT_MANIFEST_H_
#define CSID_EXPERIMENT_MANIFEST_H_

#include <string>
#include <vector>

namespace csid {

enum class Split { kTrain, kTest };

struct ManifestEntry {
  std::string speaker_id;
  std::string utterance_id;
  std::string wav_path;  // as written in the file, possibly relative
  Split split = Split::kTrain;
};

// Dataset description consumed by training and evaluation. CSV layout:
// optional "# key=value" metadata lines, a "speaker_id,utterance_id,
// wav_path,split" header, then one row per utterance.
struct DatasetManifest {
  std::string corpus;
  int sample_rate = 0;
  std::string root_dir;  // directory of the manifest file, for relative paths
  std::vector<ManifestEntry> entries;

  // Sorted unique speaker ids; the dense label space.
  std::vector<std::string> Speakers() const;
  int SpeakerIndex(const std::string& speaker_id) const;
  std::vector<const ManifestEntry*> SplitEntries(Split split) const;
  std::string ResolveWavPath(const ManifestEntry& entry) const;
};

// Loads and validates: every speaker must appear in both splits and no
// (speaker, utterance) pair may repeat.
DatasetManifest LoadManifest(const std::string& path);
void SaveManifest(const DatasetManifest& manifest, const std::string& path);
void ValidateManifest(const DatasetManifest& manifest);

}  // namespace csid

#endif  // CSID_EXPERIMENT_MANIFEST_H_
