// include/csid/gammatone.h

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

#ifndef CSID_GAMMATONE_H_
#define CSID_GAMMATONE_H_

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "csid/audio.h"

namespace csid {

// Equivalent rectangular bandwidth at center frequency f_c (Glasberg-Moore).
inline double Erb(double f_c) { return 24.7 * (4.37 * f_c / 1000.0 + 1.0); }

// ERB-number scale and its inverse; channel centers are spaced uniformly on
// this scale.
inline double ErbNumber(double f) {
  return 21.4 * std::log10(4.37 * f / 1000.0 + 1.0);
}
inline double ErbNumberInverse(double e) {
  return (std::pow(10.0, e / 21.4) - 1.0) * 1000.0 / 4.37;
}

struct FilterbankConfig {
  int n_channels = 128;
  double f_min = 50.0;
  double f_max = 8000.0;  // capped at 0.999 * Nyquist
  int order = 4;
  double bandwidth_scale = 1.019;  // multiplier on ERB(f_c)
  int sample_rate = 8000;

  double EffectiveFMax() const {
    return std::min(f_max, 0.5 * sample_rate * 0.999);
  }
};

// One bandpass channel realized by impulse invariance: the z-transform of
// k^(order-1) q^k with q = exp(-2*pi*w/fs + i*2*pi*f/fs) is a rational
// filter (an FIR of order-1 complex taps feeding `order` cascaded complex
// one-pole sections), so the realized impulse response equals the sampled
// envelope-times-carrier form exactly, up to the normalization gain.
struct GammatoneChannel {
  double center_freq = 0.0;  // Hz
  double bandwidth = 0.0;    // Hz, bandwidth_scale * ERB(f_c)
  std::complex<double> pole;
  std::vector<std::complex<double>> fir;  // taps at lags 1..order-1
  double gain = 1.0;                      // peak response normalization
  Eigen::Index delay_samples = 0;         // envelope delay (n-1)/(2*pi*w)
};

struct GammatoneFilterbank {
  FilterbankConfig config;
  std::vector<GammatoneChannel> channels;

  Eigen::ArrayXd CenterFreqs() const;
  Eigen::ArrayXd Bandwidths() const;
};

// Builds the filterbank with center frequencies equally spaced on the
// ERB-number scale between f_min and the effective f_max (a single channel
// sits at the span midpoint). Each channel's magnitude response is
// normalized to 0 dB at its center frequency.
GammatoneFilterbank MakeFilterbank(const FilterbankConfig& config);

// Per-channel gain in dB at the query frequencies, evaluated from the
// transfer function. Queries must lie in (0, Nyquist).
Eigen::MatrixXd MagnitudeResponse(const GammatoneFilterbank& fb,
                                  const Eigen::ArrayXd& freqs_hz);

// Runs every channel over the clip; row m holds channel m's output,
// advanced by the channel's envelope delay and zero-padded at the tail.
// The call owns all filter state, so concurrent calls on one filterbank
// are safe.
Eigen::MatrixXd FilterSignal(const GammatoneFilterbank& fb,
                             const AudioClip& clip);

// Realized impulse response of one channel (no delay compensation); used
// to verify the realization against the sampled analog form.
Eigen::ArrayXd ChannelImpulseResponse(const GammatoneFilterbank& fb,
                                      int channel, Eigen::Index length);

}  // namespace csid

#endif  // CSID_GAMMATONE_H_
