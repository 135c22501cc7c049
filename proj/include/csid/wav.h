// include/csid/wav.h

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

#ifndef CSID_WAV_H_
#define CSID_WAV_H_

#include <string>

#include "csid/audio.h"

namespace csid {

// Reads a RIFF/WAVE file holding PCM 16-bit or IEEE float-32 samples with
// any channel count. Multi-channel audio is averaged down to mono; 16-bit
// samples are scaled by 1/32768. Throws IoError on unreadable files and
// std::runtime_error("unsupported or corrupt WAV: ...") on bad containers
// or zero-length audio.
AudioClip LoadWav(const std::string& path);

// Writes mono 16-bit PCM. Samples are clamped to [-1, 1] and quantized by
// round(x * 32768), so a load/save round trip of an in-range signal is
// exact to within 1/32768 per sample.
void SaveWav(const AudioClip& clip, const std::string& path);

}  // namespace csid

#endif  // CSID_WAV_H_
