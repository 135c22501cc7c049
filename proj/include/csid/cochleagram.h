// include/csid/cochleagram.h

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

#ifndef CSID_COCHLEAGRAM_H_
#define CSID_COCHLEAGRAM_H_

#include <string>

#include <Eigen/Core>

#include "csid/audio.h"
#include "csid/gammatone.h"

namespace csid {

// Channels x frames matrix of log-compressed band energies. Frames overlap
// by half a frame (hop = frame_len / 2).
struct Cochleagram {
  Eigen::MatrixXd values;  // [n_channels x n_frames]
  Eigen::Index frame_len = 0;
  Eigen::Index hop = 0;
  int source_sample_rate = 0;
};

// Normalized image fed to the classifier; values span exactly [0, 1] for
// any non-constant input.
struct FeatureImage {
  Eigen::MatrixXd values;  // [height x width]
};

// Filters the clip, frames each channel with 50% overlap and emits
// log(eps + mean(y^2)) per cell with eps = 1e-10. frame_len defaults to
// 40 ms worth of samples. Throws when the clip is shorter than one frame.
Cochleagram ComputeCochleagram(const GammatoneFilterbank& fb,
                               const AudioClip& clip,
                               Eigen::Index frame_len = 0);

// Bilinear resize to height x width followed by min-max normalization to
// [0, 1]. A constant input maps to 0.5 everywhere.
FeatureImage ToFeatureImage(const Cochleagram& coch, Eigen::Index height = 500,
                            Eigen::Index width = 400);

// Flat binary matrix container used for cochleagrams and feature images:
// magic "CGRM", u16 version, u32 rows, u32 cols, then row-major
// little-endian float32 values.
void WriteCgrm(const Eigen::MatrixXd& values, const std::string& path);
Eigen::MatrixXd ReadCgrm(const std::string& path);

// 8-bit binary PGM (min-max scaled) for eyeballing.
void WritePgm(const Eigen::MatrixXd& values, const std::string& path);

}  // namespace csid

#endif  // CSID_COCHLEAGRAM_H_
