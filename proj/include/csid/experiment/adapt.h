// include/csid/experiment/adapt.h

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

#ifndef CSID_EXPERIMENT_ADAPT_H_
#define CSID_EXPERIMENT_ADAPT_H_

#include <optional>
#include <vector>

#include "csid/experiment/frontend.h"
#include "csid/experiment/manifest.h"
#include "csid/nn/model.h"

namespace csid {

// Noise-adapted training recipe: the clean image of every train utterance
// (when include_clean) plus one corrupted image per adaptation SNR.
struct AdaptationPlan {
  NoiseSource noise;
  std::vector<double> snrs{-5.0};
  bool include_clean = true;
};

// Feature images for every utterance of one split, each under the same
// optional corruption. Per-utterance corruption seeds derive from
// (seed, utterance key, condition), so any image is reproducible in
// isolation. Labels are dense speaker indices.
LabeledImages ExtractImages(const DatasetManifest& manifest, Split split,
                            const std::optional<CorruptionSpec>& corruption,
                            const FrontendConfig& config,
                            const GammatoneFilterbank& fb, uint64_t seed,
                            const std::string& seed_realm);

// Builds the adapted training set from the manifest's train split:
// size = n_train_utts * (include_clean + |snrs|).
LabeledImages BuildAdaptedTrainingSet(const DatasetManifest& manifest,
                                      const AdaptationPlan& plan,
                                      const FrontendConfig& config,
                                      uint64_t seed);

}  // namespace csid

#endif  // CSID_EXPERIMENT_ADAPT_H_
