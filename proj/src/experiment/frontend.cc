// src/experiment/frontend.cc

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

#include "csid/experiment/frontend.h"

#include "csid/resample.h"

namespace csid {

FeatureImage UtteranceToImage(const AudioClip& raw,
                              const GammatoneFilterbank& fb,
                              const FrontendConfig& config,
                              const CorruptionSpec* corruption,
                              uint64_t seed) {
  AudioClip clip = VadTrim(raw, config.vad);
  if (clip.samples.size() == 0)
    throw std::runtime_error("UtteranceToImage: empty audio after VAD");
  clip = Resample(clip, config.sample_rate);
  if (corruption != nullptr) clip = ApplyCorruption(clip, *corruption, seed);
  const Cochleagram coch = ComputeCochleagram(fb, clip, config.FrameLen());
  return ToFeatureImage(coch, config.image_h, config.image_w);
}

}  // namespace csid
