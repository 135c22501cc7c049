// include/csid/resample.h

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

#ifndef CSID_RESAMPLE_H_
#define CSID_RESAMPLE_H_

#include "csid/audio.h"

namespace csid {

// Windowed-sinc polyphase resampler (Kaiser window, beta 8.6, 64 taps per
// phase). Output duration matches the input within one sample period. If
// target_rate equals the clip's rate the input is returned unchanged,
// bit for bit.
AudioClip Resample(const AudioClip& clip, int target_rate);

}  // namespace csid

#endif  // CSID_RESAMPLE_H_
