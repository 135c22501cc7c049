// src/resample.cc

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

#include "csid/resample.h"

#include <cmath>
#include <numeric>
#include <vector>

namespace csid {

namespace {

constexpr double kKaiserBeta = 8.6;
constexpr int kTapsPerPhase = 64;
constexpr double kRolloff = 0.945;  // transition band stays inside Nyquist

double Sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(M_PI * x) / (M_PI * x);
}

}  // namespace

AudioClip Resample(const AudioClip& clip, int target_rate) {
  CheckClip(clip, "Resample");
  if (target_rate <= 0)
    throw std::invalid_argument("Resample: target rate must be positive");
  if (target_rate == clip.sample_rate) return clip;

  const long g = std::gcd(static_cast<long>(clip.sample_rate),
                          static_cast<long>(target_rate));
  const long up = target_rate / g;          // interpolation factor L
  const long down = clip.sample_rate / g;   // decimation factor M

  // Prototype lowpass at the upsampled rate fs*L. Cutoff sits at the
  // narrower of the two Nyquist frequencies, pulled in by the rolloff.
  const double cutoff_in = 0.5 * std::min(1.0, double(up) / double(down));
  const double fc_up = kRolloff * cutoff_in / double(up);

  const long n_taps = kTapsPerPhase * up + 1;  // odd length, integer center
  const long center = (n_taps - 1) / 2;        // = kTapsPerPhase/2 * up
  std::vector<double> h(static_cast<size_t>(n_taps));
  const double i0_beta = std::cyl_bessel_i(0.0, kKaiserBeta);
  for (long k = 0; k < n_taps; ++k) {
    const double t = double(k - center);
    const double frac = t / double(center);
    const double win =
        std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - frac * frac)) /
        i0_beta;
    h[static_cast<size_t>(k)] =
        double(up) * 2.0 * fc_up * Sinc(2.0 * fc_up * t) * win;
  }

  const Eigen::Index n_in = clip.samples.size();
  const Eigen::Index n_out = static_cast<Eigen::Index>(
      std::llround(double(n_in) * double(up) / double(down)));

  AudioClip out;
  out.sample_rate = target_rate;
  out.samples.setZero(n_out);
  for (Eigen::Index j = 0; j < n_out; ++j) {
    // Output j sits at upsampled index j*down; evaluate the kernel centered
    // there. Nonzero input samples lie at multiples of `up`.
    const long n_up = long(j) * down + center;
    const long phase = n_up % up;
    const long i_base = (n_up - phase) / up;
    double acc = 0.0;
    for (long k = phase, t = 0; k < n_taps; k += up, ++t) {
      const long i = i_base - t;
      if (i < 0) break;
      if (i >= n_in) continue;
      acc += h[static_cast<size_t>(k)] * clip.samples[i];
    }
    out.samples[j] = acc;
  }
  return out;
}

}  // namespace csid
