// include/csid/noise.h

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

#ifndef CSID_NOISE_H_
#define CSID_NOISE_H_

#include <cstdint>
#include <string>

#include "csid/audio.h"

namespace csid {

// Where corrupting noise comes from: generated white or pink, or a recorded
// WAV (babble, car, street, ...).
struct NoiseSource {
  enum class Kind { kWhite, kPink, kFile };
  Kind kind = Kind::kWhite;
  std::string file_path;  // required iff kind == kFile
  uint64_t seed = 0;      // stream id for generated noise
};

// I.i.d. standard Gaussian samples; zero mean, unit variance before any
// scaling. Deterministic for a fixed seed.
AudioClip GenWhiteNoise(Eigen::Index n_samples, int sample_rate,
                        uint64_t seed);

// White noise shaped by a cascade of three one-pole/one-zero sections whose
// corners interleave on a log grid over [20 Hz, Nyquist], approximating a
// 1/f power spectrum (-10 dB/decade). Output is centered and scaled to unit
// variance. Deterministic for a fixed seed.
AudioClip GenPinkNoise(Eigen::Index n_samples, int sample_rate,
                       uint64_t seed);

// Materializes a noise source as a clip of exactly n_samples at sample_rate.
// File noise is loaded (and resampled if the rates differ), then cropped
// from a seeded random offset when longer than needed or tiled circularly
// from a seeded offset when shorter.
AudioClip RenderNoise(const NoiseSource& source, Eigen::Index n_samples,
                      int sample_rate, uint64_t seed);

const char* NoiseKindName(NoiseSource::Kind kind);

}  // namespace csid

#endif  // CSID_NOISE_H_
