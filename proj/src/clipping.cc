// src/clipping.cc

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

#include "csid/clipping.h"

namespace csid {

namespace {

double DeriveThreshold(const AudioClip& clip, double fraction,
                       const char* op) {
  CheckClip(clip, op);
  if (fraction <= 0.0 || fraction > 1.0)
    throw std::invalid_argument(std::string(op) +
                                ": threshold fraction must be in (0, 1]");
  const double peak = clip.samples.abs().maxCoeff();
  if (peak == 0.0)
    throw std::invalid_argument(std::string(op) +
                                ": cannot derive threshold");
  return fraction * peak;
}

}  // namespace

AudioClip CenterClip(const AudioClip& clip, double threshold_fraction) {
  const double c = DeriveThreshold(clip, threshold_fraction, "CenterClip");
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.samples.resize(clip.samples.size());
  for (Eigen::Index i = 0; i < clip.samples.size(); ++i) {
    const double x = clip.samples[i];
    if (x >= c)
      out.samples[i] = x - c;
    else if (x <= -c)
      out.samples[i] = x + c;
    else
      out.samples[i] = 0.0;
  }
  return out;
}

AudioClip PeakClip(const AudioClip& clip, double threshold_fraction) {
  const double c = DeriveThreshold(clip, threshold_fraction, "PeakClip");
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.samples = clip.samples.min(c).max(-c);
  return out;
}

}  // namespace csid
