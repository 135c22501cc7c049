// src/reverb.cc

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

#include "csid/reverb.h"

#include <cmath>
#include <random>

namespace csid {

namespace {

// Sum of r^k for k in [a, b], r in (0, 1).
double GeometricSum(double r, Eigen::Index a, Eigen::Index b) {
  if (b < a) return 0.0;
  return (std::pow(r, double(a)) - std::pow(r, double(b + 1))) / (1.0 - r);
}

}  // namespace

RoomImpulseResponse SynthRir(double t60_ms, int sample_rate, uint64_t seed,
                             double duration_factor) {
  if (t60_ms <= 0) throw std::invalid_argument("SynthRir: t60 must be > 0");
  if (sample_rate <= 0)
    throw std::invalid_argument("SynthRir: bad sample rate");
  if (duration_factor < 1.0)
    throw std::invalid_argument("SynthRir: duration_factor must be >= 1");

  const double t60_samples = t60_ms * sample_rate / 1000.0;
  const double alpha = 3.0 * std::log(10.0) / t60_samples;  // -60 dB at t60
  const Eigen::Index n =
      static_cast<Eigen::Index>(std::ceil(duration_factor * t60_samples));
  const Eigen::Index split =
      std::min<Eigen::Index>(static_cast<Eigen::Index>(t60_samples), n);

  RoomImpulseResponse rir;
  rir.sample_rate = sample_rate;
  rir.t60_ms = t60_ms;
  rir.taps.resize(n);
  rir.taps[0] = 1.0;  // direct path

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Eigen::Index k = 1; k < n; ++k)
    rir.taps[k] = gauss(rng) * std::exp(-alpha * double(k));

  // Pin the realized energy of the segments before and after t60 to the
  // envelope's expected energy, which makes the decay calibration (and the
  // beyond-t60 energy bound) independent of the particular noise draw.
  const double r = std::exp(-2.0 * alpha);
  auto pin = [&](Eigen::Index a, Eigen::Index b) {
    if (b < a) return;
    const double expected = GeometricSum(r, a, b);
    const double got = rir.taps.segment(a, b - a + 1).square().sum();
    if (got > 0) rir.taps.segment(a, b - a + 1) *= std::sqrt(expected / got);
  };
  pin(1, split - 1);
  pin(split, n - 1);
  return rir;
}

AudioClip AddReverb(const AudioClip& clip, const RoomImpulseResponse& rir) {
  CheckClip(clip, "AddReverb");
  if (rir.sample_rate != clip.sample_rate)
    throw std::invalid_argument("AddReverb: sample rate mismatch");
  if (rir.taps.size() == 0)
    throw std::invalid_argument("AddReverb: empty impulse response");

  const Eigen::Index n = clip.samples.size();
  const Eigen::Index k_max = rir.taps.size();
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.samples.setZero(n);
  // Convolution as a sum of shifted, scaled copies; vectorized per tap.
  for (Eigen::Index k = 0; k < k_max && k < n; ++k) {
    if (rir.taps[k] == 0.0) continue;
    out.samples.tail(n - k) += rir.taps[k] * clip.samples.head(n - k);
  }
  return out;
}

}  // namespace csid
