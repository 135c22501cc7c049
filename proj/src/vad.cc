// src/vad.cc

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

#include "csid/vad.h"

#include <cmath>
#include <vector>

namespace csid {

AudioClip VadTrim(const AudioClip& clip, const VadParams& params) {
  CheckClip(clip, "VadTrim");
  if (params.hop_ms <= 0 || params.frame_ms < params.hop_ms)
    throw std::invalid_argument("VadTrim: need frame_ms >= hop_ms > 0");
  if (params.min_speech_frames < 1)
    throw std::invalid_argument("VadTrim: min_speech_frames must be >= 1");

  const Eigen::Index n = clip.samples.size();
  const Eigen::Index frame_len = static_cast<Eigen::Index>(
      std::lround(params.frame_ms * clip.sample_rate / 1000.0));
  const Eigen::Index hop = static_cast<Eigen::Index>(
      std::lround(params.hop_ms * clip.sample_rate / 1000.0));
  if (frame_len < 1 || hop < 1 || n <= frame_len)
    throw std::invalid_argument("VadTrim: clip shorter than one frame");

  // Frame i covers [i*hop, i*hop + frame_len); the final frame absorbs the
  // tail so trailing speech is never dropped.
  const Eigen::Index n_frames = (n - frame_len) / hop + 1;
  std::vector<Eigen::Index> begin(n_frames), end(n_frames);
  std::vector<double> energy(n_frames);
  double peak = 0.0;
  for (Eigen::Index i = 0; i < n_frames; ++i) {
    begin[i] = i * hop;
    end[i] = (i == n_frames - 1) ? n : begin[i] + frame_len;
    energy[i] =
        clip.samples.segment(begin[i], end[i] - begin[i]).square().mean();
    peak = std::max(peak, energy[i]);
  }

  const double floor = peak * std::pow(10.0, params.energy_floor_db / 10.0);
  std::vector<char> keep(n_frames);
  Eigen::Index n_kept = 0;
  for (Eigen::Index i = 0; i < n_frames; ++i) {
    keep[i] = energy[i] > floor;
    n_kept += keep[i];
  }
  if (n_kept == 0) return clip;  // nothing above the floor

  // Bridge short gaps between speech frames.
  Eigen::Index last_speech = -1;
  for (Eigen::Index i = 0; i < n_frames; ++i) {
    if (!keep[i]) continue;
    if (last_speech >= 0 && i - last_speech - 1 > 0 &&
        i - last_speech - 1 < params.min_speech_frames) {
      for (Eigen::Index j = last_speech + 1; j < i; ++j) keep[j] = 1;
    }
    last_speech = i;
  }

  // Merge kept frame ranges (frames overlap when hop < frame_len) and
  // concatenate.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> segments;
  for (Eigen::Index i = 0; i < n_frames; ++i) {
    if (!keep[i]) continue;
    if (!segments.empty() && begin[i] <= segments.back().second)
      segments.back().second = std::max(segments.back().second, end[i]);
    else
      segments.emplace_back(begin[i], end[i]);
  }

  Eigen::Index total = 0;
  for (const auto& s : segments) total += s.second - s.first;
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.samples.resize(total);
  Eigen::Index pos = 0;
  for (const auto& s : segments) {
    const Eigen::Index len = s.second - s.first;
    out.samples.segment(pos, len) = clip.samples.segment(s.first, len);
    pos += len;
  }
  return out;
}

}  // namespace csid
