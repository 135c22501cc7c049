// include/csid/experiment/synth.h

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

#ifndef CSID_EXPERIMENT_SYNTH_H_
#define CSID_EXPERIMENT_SYNTH_H_

#include <cstdint>
#include <string>

#include "csid/experiment/manifest.h"

namespace csid {

// Desk-scale synthetic corpus. Each speaker gets a fixed voice signature
// (F0 plus three formant frequencies and bandwidths) drawn from per-speaker
// disjoint ranges; utterances are pulse trains through the speaker's
// formant filters with a random +-10% F0 contour and an amplitude envelope.
struct SynthConfig {
  int n_speakers = 10;
  int utts_per_speaker = 12;
  double utt_seconds = 2.0;
  int sample_rate = 8000;
};

// Writes one WAV per utterance plus manifest.csv into out_dir and returns
// the manifest. The split assigns round(0.8 * n) utterances to train, at
// least one to test. Byte-deterministic for a fixed seed.
DatasetManifest SynthSpeakerDataset(const SynthConfig& config,
                                    const std::string& out_dir,
                                    uint64_t seed);

}  // namespace csid

#endif  // CSID_EXPERIMENT_SYNTH_H_
