// src/experiment/adapt.cc

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

#include "csid/experiment/adapt.h"

#include "csid/seed.h"
#include "csid/wav.h"

namespace csid {

LabeledImages ExtractImages(const DatasetManifest& manifest, Split split,
                            const std::optional<CorruptionSpec>& corruption,
                            const FrontendConfig& config,
                            const GammatoneFilterbank& fb, uint64_t seed,
                            const std::string& seed_realm) {
  const std::string condition =
      corruption ? FormatCorruptionSpec(*corruption) : "clean";
  LabeledImages set;
  set.n_classes = static_cast<int>(manifest.Speakers().size());
  for (const ManifestEntry* entry : manifest.SplitEntries(split)) {
    const AudioClip raw = LoadWav(manifest.ResolveWavPath(*entry));
    const uint64_t utt_seed =
        DeriveSeed(seed, seed_realm + ":" + condition + ":" +
                             entry->speaker_id + "/" + entry->utterance_id);
    set.images.push_back(
        UtteranceToImage(raw, fb, config,
                         corruption ? &*corruption : nullptr, utt_seed)
            .values);
    set.labels.push_back(manifest.SpeakerIndex(entry->speaker_id));
  }
  return set;
}

LabeledImages BuildAdaptedTrainingSet(const DatasetManifest& manifest,
                                      const AdaptationPlan& plan,
                                      const FrontendConfig& config,
                                      uint64_t seed) {
  if (!plan.include_clean && plan.snrs.empty())
    throw std::invalid_argument("empty adaptation plan");
  if (manifest.SplitEntries(Split::kTrain).empty())
    throw std::invalid_argument("BuildAdaptedTrainingSet: no train split");

  const GammatoneFilterbank fb = MakeFilterbank(config.Filterbank());
  LabeledImages set;
  set.n_classes = static_cast<int>(manifest.Speakers().size());

  auto append = [&set](LabeledImages&& part) {
    for (auto& img : part.images) set.images.push_back(std::move(img));
    set.labels.insert(set.labels.end(), part.labels.begin(),
                      part.labels.end());
  };

  if (plan.include_clean)
    append(ExtractImages(manifest, Split::kTrain, std::nullopt, config, fb,
                         seed, "train"));
  for (const double snr : plan.snrs) {
    CorruptionSpec spec;
    spec.noise = CorruptionSpec::Noise{plan.noise, snr};
    append(ExtractImages(manifest, Split::kTrain, spec, config, fb, seed,
                         "train"));
  }
  return set;
}

}  // namespace csid
