// include/csid/clipping.h

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

#ifndef CSID_CLIPPING_H_
#define CSID_CLIPPING_H_

#include "csid/audio.h"

namespace csid {

// Both clipping distortions derive their threshold from the signal itself:
// C = threshold_fraction * max|x|. A silent clip has no usable threshold
// and raises std::invalid_argument("cannot derive threshold").

// Center clipping zeroes everything inside (-C, C) and shifts the rest
// toward zero:
//   y =  x - C   if x >=  C
//   y =  0       if |x| < C
//   y =  x + C   if x <= -C
AudioClip CenterClip(const AudioClip& clip, double threshold_fraction);

// Peak clipping saturates at the threshold: y = clamp(x, -C, C).
AudioClip PeakClip(const AudioClip& clip, double threshold_fraction);

}  // namespace csid

#endif  // CSID_CLIPPING_H_
