// include/csid/reverb.h

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

#ifndef CSID_REVERB_H_
#define CSID_REVERB_H_

#include <cstdint>

#include "csid/audio.h"

namespace csid {

// Synthetic room impulse response: a unit direct-path tap followed by a
// Gaussian tail under an exponential envelope that decays 60 dB over
// t60_ms.
struct RoomImpulseResponse {
  Eigen::ArrayXd taps;
  int sample_rate = 0;
  double t60_ms = 0.0;
};

// Builds an RIR of length ceil(duration_factor * t60). The head and tail
// energies of the random part are pinned to their expected values, so the
// Schroeder decay crosses -60 dB at t60 regardless of the realization and
// the energy beyond t60 stays within 1e-6 of the total.
RoomImpulseResponse SynthRir(double t60_ms, int sample_rate, uint64_t seed,
                             double duration_factor = 1.5);

// Full linear convolution of clip with the RIR, truncated to the input
// length. Throws on sample-rate mismatch.
AudioClip AddReverb(const AudioClip& clip, const RoomImpulseResponse& rir);

}  // namespace csid

#endif  // CSID_REVERB_H_
