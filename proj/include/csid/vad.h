// include/csid/vad.h

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

#ifndef CSID_VAD_H_
#define CSID_VAD_H_

#include "csid/audio.h"

namespace csid {

// Frame-energy voice activity detection. A frame is speech when its energy
// exceeds the peak frame energy by more than energy_floor_db (a negative
// number). Gaps shorter than min_speech_frames between speech frames are
// bridged before the kept regions are concatenated.
struct VadParams {
  double frame_ms = 20.0;
  double hop_ms = 10.0;
  double energy_floor_db = -40.0;
  int min_speech_frames = 3;
};

// Removes low-energy regions and concatenates the remainder in original
// order. Degenerate case: when no frame clears the floor (e.g. digital
// silence) the input is returned unchanged. Output length never exceeds
// the input length.
AudioClip VadTrim(const AudioClip& clip, const VadParams& params = {});

}  // namespace csid

#endif  // CSID_VAD_H_
