// include/csid/corruption.h

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

#ifndef CSID_CORRUPTION_H_
#define CSID_CORRUPTION_H_

#include <cstdint>
#include <optional>
#include <string>

#include "csid/audio.h"
#include "csid/noise.h"

namespace csid {

enum class ClipKind { kCenter, kPeak };

// Declarative description of one corruption condition. Any subset of stages
// may be present, but not none. Canonical textual form, used by manifests
// and the CLI:
//   noise=white@-5dB;reverb=200ms;clip=center:0.6
//   noise=file:babble.wav@0dB
//   clip=peak:1.0
// The clean condition is expressed by omitting the spec entirely, never by
// an infinite SNR.
struct CorruptionSpec {
  struct Noise {
    NoiseSource source;
    double snr_db = 0.0;
  };
  std::optional<Noise> noise;
  std::optional<double> reverb_delay_ms;
  struct Clip {
    ClipKind kind = ClipKind::kCenter;
    double threshold_fraction = 1.0;
  };
  std::optional<Clip> clip;

  bool Empty() const { return !noise && !reverb_delay_ms && !clip; }
};

// Parses the canonical form; stages may appear in any order and each at
// most once. Throws std::invalid_argument on malformed text.
CorruptionSpec ParseCorruptionSpec(const std::string& text);

// Renders the canonical form (stage order noise;reverb;clip).
std::string FormatCorruptionSpec(const CorruptionSpec& spec);

// Adds noise scaled so that 10*log10(P_speech / P_scaled_noise) equals
// snr_db exactly (powers are mean squares over the full clips). The noise
// must be at least as long as the speech; excess is dropped. The output is
// not renormalized and may leave [-1, 1].
AudioClip MixAtSnr(const AudioClip& speech, const AudioClip& noise,
                   double snr_db);

// 10*log10(P_speech / P_noise) of two already-aligned components.
double MeasuredSnrDb(const AudioClip& speech, const AudioClip& noise);

// Applies the stages of `spec` in the fixed order reverberation, then noise
// at the target SNR relative to the (possibly reverberated) speech, then
// clipping. Absent stages are identities. Deterministic for a fixed
// (clip, spec, seed). Throws on an empty spec.
AudioClip ApplyCorruption(const AudioClip& clip, const CorruptionSpec& spec,
                          uint64_t seed);

// Same, but also reports the SNR re-measured from the mixed components
// (NaN when the spec has no noise stage).
AudioClip ApplyCorruption(const AudioClip& clip, const CorruptionSpec& spec,
                          uint64_t seed, double* measured_snr_db);

const char* ClipKindName(ClipKind kind);

}  // namespace csid

#endif  // CSID_CORRUPTION_H_
