// include/csid/audio.h

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

#ifndef CSID_AUDIO_H_
#define CSID_AUDIO_H_

#include <stdexcept>

#include <Eigen/Core>

namespace csid {

// Mono audio buffer. Samples are dimensionless amplitudes, nominally in
// [-1, 1]. Processing stages never clamp; clamping happens only at WAV
// export. All DSP runs in double precision.
struct AudioClip {
  Eigen::ArrayXd samples;
  int sample_rate = 0;

  Eigen::Index num_samples() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// Mean squared amplitude. This is the power measure used everywhere SNR is
// involved.
inline double MeanPower(const AudioClip& clip) {
  if (clip.samples.size() == 0)
    throw std::invalid_argument("MeanPower: empty clip");
  return clip.samples.square().mean();
}

// Throws if the clip violates the carrier invariants (positive rate,
// non-empty, finite samples).
inline void CheckClip(const AudioClip& clip, const char* context) {
  if (clip.sample_rate <= 0)
    throw std::invalid_argument(std::string(context) +
                                ": sample rate must be positive");
  if (clip.samples.size() == 0)
    throw std::invalid_argument(std::string(context) + ": empty clip");
  if (!clip.samples.isFinite().all())
    throw std::invalid_argument(std::string(context) +
                                ": non-finite samples");
}

}  // namespace csid

#endif  // CSID_AUDIO_H_
