// include/csid/experiment/frontend.h

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

#ifndef CSID_EXPERIMENT_FRONTEND_H_
#define CSID_EXPERIMENT_FRONTEND_H_

#include <cstdint>
#include <optional>

#include "csid/cochleagram.h"
#include "csid/corruption.h"
#include "csid/gammatone.h"
#include "csid/vad.h"

namespace csid {

// Everything between a raw utterance and a classifier input image:
// VAD trim, resample, optional corruption, filterbank, framed log
// energies, resize + normalize.
struct FrontendConfig {
  int sample_rate = 8000;
  int n_channels = 128;
  double f_min = 50.0;
  double f_max = 8000.0;
  double frame_ms = 40.0;
  Eigen::Index image_h = 500;
  Eigen::Index image_w = 400;
  VadParams vad;

  FilterbankConfig Filterbank() const {
    FilterbankConfig fb;
    fb.n_channels = n_channels;
    fb.f_min = f_min;
    fb.f_max = f_max;
    fb.sample_rate = sample_rate;
    return fb;
  }

  Eigen::Index FrameLen() const {
    Eigen::Index len = static_cast<Eigen::Index>(frame_ms * sample_rate / 1000.0 + 0.5);
    return len + (len % 2);  // framing requires an even length
  }
};

// Runs the full pipeline on one utterance. `corruption` (may be null) is
// applied after VAD and resampling, seeded by `seed`.
FeatureImage UtteranceToImage(const AudioClip& raw,
                              const GammatoneFilterbank& fb,
                              const FrontendConfig& config,
                              const CorruptionSpec* corruption,
                              uint64_t seed);

}  // namespace csid

#endif  // CSID_EXPERIMENT_FRONTEND_H_
