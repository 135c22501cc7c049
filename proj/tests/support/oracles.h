// tests/support/oracles.h

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

// Independent reference implementations for the tests. Nothing here calls
// the library paths it is used to verify.

#ifndef CSID_TESTS_SUPPORT_ORACLES_H_
#define CSID_TESTS_SUPPORT_ORACLES_H_

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace csid_test {

// In-place iterative radix-2 FFT.
inline void Fft(std::vector<std::complex<double>>& a) {
  const size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("Fft: size must be a power of two");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * M_PI / double(len);
    const std::complex<double> wl(std::cos(angle), std::sin(angle));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

// Amplitude of the sinusoid at frequency `freq_hz` in `x` (Goertzel-style
// single-bin DFT; exact for whole-period windows).
inline double ToneAmplitude(const Eigen::ArrayXd& x, double freq_hz,
                            double sample_rate) {
  const double w = 2.0 * M_PI * freq_hz / sample_rate;
  std::complex<double> acc(0.0, 0.0);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    acc += x[i] * std::exp(std::complex<double>(0.0, -w * double(i)));
  return 2.0 * std::abs(acc) / double(x.size());
}

// Welch power spectral density with a Hann window and 50% overlap.
// Returns (freqs_hz, psd).
inline std::pair<Eigen::ArrayXd, Eigen::ArrayXd> WelchPsd(
    const Eigen::ArrayXd& x, double sample_rate, size_t segment = 4096) {
  if ((segment & (segment - 1)) != 0)
    throw std::invalid_argument("WelchPsd: segment must be a power of two");
  const size_t hop = segment / 2;
  Eigen::ArrayXd window(segment);
  for (size_t i = 0; i < segment; ++i)
    window[static_cast<Eigen::Index>(i)] =
        0.5 * (1.0 - std::cos(2.0 * M_PI * double(i) / double(segment - 1)));
  const double win_power = window.square().sum();

  Eigen::ArrayXd psd = Eigen::ArrayXd::Zero(segment / 2 + 1);
  size_t n_segments = 0;
  for (size_t start = 0; start + segment <= size_t(x.size()); start += hop) {
    std::vector<std::complex<double>> buf(segment);
    for (size_t i = 0; i < segment; ++i)
      buf[i] = x[static_cast<Eigen::Index>(start + i)] *
               window[static_cast<Eigen::Index>(i)];
    Fft(buf);
    for (size_t k = 0; k <= segment / 2; ++k)
      psd[static_cast<Eigen::Index>(k)] += std::norm(buf[k]);
    ++n_segments;
  }
  if (n_segments == 0) throw std::invalid_argument("WelchPsd: input too short");
  psd /= double(n_segments) * win_power * sample_rate;
  Eigen::ArrayXd freqs(segment / 2 + 1);
  for (size_t k = 0; k <= segment / 2; ++k)
    freqs[static_cast<Eigen::Index>(k)] =
        double(k) * sample_rate / double(segment);
  return {freqs, psd};
}

// Least-squares slope of 10*log10(psd) against log10(f), evaluated on a
// log-spaced frequency grid so every octave weighs the same.
inline double PsdSlopeDbPerDecade(const Eigen::ArrayXd& freqs,
                                  const Eigen::ArrayXd& psd, double f_lo,
                                  double f_hi, int n_points = 60) {
  std::vector<double> lx, ly;
  for (int i = 0; i < n_points; ++i) {
    const double f =
        f_lo * std::pow(f_hi / f_lo, double(i) / double(n_points - 1));
    Eigen::Index k = 0;
    while (k + 1 < freqs.size() && freqs[k + 1] <= f) ++k;
    const double frac =
        (f - freqs[k]) / std::max(1e-12, freqs[k + 1] - freqs[k]);
    const double p = (1 - frac) * psd[k] + frac * psd[k + 1];
    lx.push_back(std::log10(f));
    ly.push_back(10.0 * std::log10(p));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(lx.size());
  for (size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Textbook O(N*K) convolution truncated to the input length.
inline Eigen::ArrayXd NaiveConvolve(const Eigen::ArrayXd& x,
                                    const Eigen::ArrayXd& taps) {
  Eigen::ArrayXd y = Eigen::ArrayXd::Zero(x.size());
  for (Eigen::Index n = 0; n < x.size(); ++n)
    for (Eigen::Index k = 0; k <= n && k < taps.size(); ++k)
      y[n] += taps[k] * x[n - k];
  return y;
}

// Time where the Schroeder backward integral of the impulse response first
// drops below -60 dB, in samples.
inline Eigen::Index SchroederCrossing(const Eigen::ArrayXd& taps,
                                      double threshold_db = -60.0) {
  Eigen::ArrayXd tail = Eigen::ArrayXd::Zero(taps.size() + 1);
  for (Eigen::Index k = taps.size() - 1; k >= 0; --k)
    tail[k] = tail[k + 1] + taps[k] * taps[k];
  const double total = tail[0];
  for (Eigen::Index k = 0; k < taps.size(); ++k)
    if (10.0 * std::log10(tail[k] / total) <= threshold_db) return k;
  return taps.size();
}

// Directly sampled bandpass impulse response t^(n-1) e^(-2 pi w t)
// cos(2 pi f t) for t = k / fs, zero at k = 0.
inline Eigen::ArrayXd SampledGammatone(double f_c, double bandwidth_hz,
                                       int order, int sample_rate,
                                       Eigen::Index length) {
  Eigen::ArrayXd h = Eigen::ArrayXd::Zero(length);
  for (Eigen::Index k = 1; k < length; ++k) {
    const double t = double(k) / sample_rate;
    h[k] = std::pow(t, order - 1) *
           std::exp(-2.0 * M_PI * bandwidth_hz * t) *
           std::cos(2.0 * M_PI * f_c * t);
  }
  return h;
}

// Zero-lag normalized cross-correlation of two sequences.
inline double NormalizedCrossCorrelation(const Eigen::ArrayXd& a,
                                         const Eigen::ArrayXd& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("NormalizedCrossCorrelation: size mismatch");
  const double num = (a * b).sum();
  const double den = std::sqrt(a.square().sum() * b.square().sum());
  return den > 0 ? num / den : 0.0;
}

}  // namespace csid_test

#endif  // CSID_TESTS_SUPPORT_ORACLES_H_
