// src/noise.cc

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

#include "csid/noise.h"

#include <cmath>
#include <random>

#include "csid/resample.h"
#include "csid/seed.h"
#include "csid/wav.h"

namespace csid {

namespace {

// First-order section (s + wz)/(s + wp) mapped by the bilinear transform.
struct PoleZero {
  double b0, b1, a1;  // y[k] = b0 x[k] + b1 x[k-1] - a1 y[k-1]

  static PoleZero FromAnalog(double f_zero, double f_pole, double fs) {
    const double k = 2.0 * fs;
    const double wz = 2.0 * M_PI * f_zero;
    const double wp = 2.0 * M_PI * f_pole;
    const double a0 = k + wp;
    return {(k + wz) / a0, (wz - k) / a0, (wp - k) / a0};
  }

  void Run(Eigen::ArrayXd& x) const {
    double xm1 = 0.0, ym1 = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double xi = x[i];
      const double yi = b0 * xi + b1 * xm1 - a1 * ym1;
      x[i] = yi;
      xm1 = xi;
      ym1 = yi;
    }
  }
};

}  // namespace

AudioClip GenWhiteNoise(Eigen::Index n_samples, int sample_rate,
                        uint64_t seed) {
  if (n_samples <= 0)
    throw std::invalid_argument("GenWhiteNoise: n_samples must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  AudioClip clip;
  clip.sample_rate = sample_rate;
  clip.samples.resize(n_samples);
  for (Eigen::Index i = 0; i < n_samples; ++i) clip.samples[i] = gauss(rng);
  return clip;
}

AudioClip GenPinkNoise(Eigen::Index n_samples, int sample_rate,
                       uint64_t seed) {
  if (n_samples <= 0)
    throw std::invalid_argument("GenPinkNoise: n_samples must be positive");

  // Three sections spanning [20 Hz, Nyquist]; each pole is followed half a
  // step later (in log frequency) by its zero, so the average slope over
  // the band is -10 dB/decade.
  const double f_lo = 20.0;
  const double f_hi = 0.5 * sample_rate;
  const double span = std::log10(f_hi / f_lo);
  const int n_sections = 3;
  const double step = span / n_sections;

  // Extra head samples swallow the filter transient.
  const Eigen::Index warmup =
      std::min<Eigen::Index>(sample_rate, n_samples);
  AudioClip white =
      GenWhiteNoise(n_samples + warmup, sample_rate, seed);
  Eigen::ArrayXd buf = white.samples;
  for (int s = 0; s < n_sections; ++s) {
    const double f_pole = f_lo * std::pow(10.0, step * (s + 0.25));
    const double f_zero = f_lo * std::pow(10.0, step * (s + 0.75));
    PoleZero::FromAnalog(f_zero, f_pole, sample_rate).Run(buf);
  }

  AudioClip clip;
  clip.sample_rate = sample_rate;
  clip.samples = buf.tail(n_samples);
  clip.samples -= clip.samples.mean();
  const double rms = std::sqrt(clip.samples.square().mean());
  if (rms > 0) clip.samples /= rms;
  return clip;
}

AudioClip RenderNoise(const NoiseSource& source, Eigen::Index n_samples,
                      int sample_rate, uint64_t seed) {
  if (n_samples <= 0)
    throw std::invalid_argument("RenderNoise: n_samples must be positive");
  const uint64_t stream = SplitMix64(seed ^ SplitMix64(source.seed));
  switch (source.kind) {
    case NoiseSource::Kind::kWhite:
      return GenWhiteNoise(n_samples, sample_rate, stream);
    case NoiseSource::Kind::kPink:
      return GenPinkNoise(n_samples, sample_rate, stream);
    case NoiseSource::Kind::kFile:
      break;
  }

  AudioClip file = LoadWav(source.file_path);
  CheckClip(file, "RenderNoise(file)");
  if (file.sample_rate != sample_rate) file = Resample(file, sample_rate);
  if (file.samples.size() == 0)
    throw std::runtime_error("RenderNoise: noise file resampled to nothing");

  std::mt19937_64 rng(stream);
  const Eigen::Index n_file = file.samples.size();
  const Eigen::Index offset = static_cast<Eigen::Index>(
      std::uniform_int_distribution<long long>(0, n_file - 1)(rng));

  AudioClip out;
  out.sample_rate = sample_rate;
  out.samples.resize(n_samples);
  for (Eigen::Index i = 0; i < n_samples; ++i)
    out.samples[i] = file.samples[(offset + i) % n_file];  // circular tiling
  return out;
}

const char* NoiseKindName(NoiseSource::Kind kind) {
  switch (kind) {
    case NoiseSource::Kind::kWhite: return "white";
    case NoiseSource::Kind::kPink: return "pink";
    case NoiseSource::Kind::kFile: return "file";
  }
  return "?";
}

}  // namespace csid
