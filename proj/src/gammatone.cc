// src/gammatone.cc

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

#include "csid/gammatone.h"

#include <cmath>

namespace csid {

namespace {

using Complex = std::complex<double>;

// Eulerian numbers A(m, 0..m-1); they form the numerator polynomial of
// sum_k k^m x^k = x * sum_j A(m,j) x^j / (1-x)^(m+1). For m = 0 the single
// coefficient 1 covers sum_{k>=1} x^k = x / (1-x).
std::vector<double> EulerianRow(int m) {
  std::vector<double> row{1.0};
  for (int r = 2; r <= m; ++r) {
    std::vector<double> next(static_cast<size_t>(r), 0.0);
    for (int j = 0; j < r; ++j) {
      const double left = j < static_cast<int>(row.size()) ? row[j] : 0.0;
      const double up = j >= 1 && j - 1 < static_cast<int>(row.size())
                            ? row[j - 1]
                            : 0.0;
      next[static_cast<size_t>(j)] = (j + 1) * left + (r - j) * up;
    }
    row = std::move(next);
  }
  return row;
}

// Transfer function of the complex prototype at z^-1 = e^{-i omega}.
Complex ComplexResponse(const GammatoneChannel& ch, int order, double omega) {
  const Complex zi = std::exp(Complex(0.0, -omega));
  Complex num(0.0, 0.0);
  Complex zpow = zi;
  for (const Complex& c : ch.fir) {
    num += c * zpow;
    zpow *= zi;
  }
  return num / std::pow(1.0 - ch.pole * zi, order);
}

// Response of the real filter (real part of the complex output).
double RealResponseMagnitude(const GammatoneChannel& ch, int order,
                             double omega) {
  const Complex pos = ComplexResponse(ch, order, omega);
  const Complex neg = ComplexResponse(ch, order, -omega);
  return std::abs(0.5 * (pos + std::conj(neg)));
}

GammatoneChannel MakeChannel(double f_c, const FilterbankConfig& config) {
  GammatoneChannel ch;
  ch.center_freq = f_c;
  ch.bandwidth = config.bandwidth_scale * Erb(f_c);
  const double beta = 2.0 * M_PI * ch.bandwidth / config.sample_rate;
  const double omega = 2.0 * M_PI * f_c / config.sample_rate;
  ch.pole = std::exp(Complex(-beta, omega));

  const std::vector<double> eulerian = EulerianRow(config.order - 1);
  ch.fir.resize(eulerian.size());
  Complex qpow = ch.pole;
  for (size_t j = 0; j < eulerian.size(); ++j) {
    ch.fir[j] = eulerian[j] * qpow;
    qpow *= ch.pole;
  }

  ch.gain = 1.0 / RealResponseMagnitude(ch, config.order, omega);
  ch.delay_samples = static_cast<Eigen::Index>(std::lround(
      (config.order - 1) / (2.0 * M_PI * ch.bandwidth) * config.sample_rate));
  return ch;
}

// Complex FIR + pole cascade over a real input; returns gain * Re(output).
void RunChannel(const GammatoneChannel& ch, int order,
                const Eigen::ArrayXd& x, Eigen::ArrayXd& y) {
  const size_t n_fir = ch.fir.size();
  std::vector<double> x_hist(n_fir + 1, 0.0);  // x[k-1] .. x[k-n_fir]
  std::vector<Complex> state(static_cast<size_t>(order), Complex(0.0, 0.0));
  y.resize(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    Complex u(0.0, 0.0);
    for (size_t j = 0; j < n_fir; ++j) u += ch.fir[j] * x_hist[j];
    for (int s = 0; s < order; ++s) {
      u += ch.pole * state[static_cast<size_t>(s)];
      state[static_cast<size_t>(s)] = u;
    }
    y[k] = ch.gain * u.real();
    for (size_t j = n_fir; j > 1; --j) x_hist[j - 1] = x_hist[j - 2];
    if (n_fir > 0) x_hist[0] = x[k];
  }
}

}  // namespace

Eigen::ArrayXd GammatoneFilterbank::CenterFreqs() const {
  Eigen::ArrayXd f(channels.size());
  for (size_t i = 0; i < channels.size(); ++i)
    f[static_cast<Eigen::Index>(i)] = channels[i].center_freq;
  return f;
}

Eigen::ArrayXd GammatoneFilterbank::Bandwidths() const {
  Eigen::ArrayXd w(channels.size());
  for (size_t i = 0; i < channels.size(); ++i)
    w[static_cast<Eigen::Index>(i)] = channels[i].bandwidth;
  return w;
}

GammatoneFilterbank MakeFilterbank(const FilterbankConfig& config) {
  if (config.n_channels < 1)
    throw std::invalid_argument("MakeFilterbank: need n_channels >= 1");
  if (config.order < 1)
    throw std::invalid_argument("MakeFilterbank: need order >= 1");
  if (config.sample_rate <= 0)
    throw std::invalid_argument("MakeFilterbank: bad sample rate");
  if (config.bandwidth_scale <= 0)
    throw std::invalid_argument("MakeFilterbank: bad bandwidth scale");
  const double f_max = config.EffectiveFMax();
  if (!(config.f_min > 0) || !(config.f_min < f_max))
    throw std::invalid_argument(
        "MakeFilterbank: need 0 < f_min < min(f_max, Nyquist)");

  const double e_lo = ErbNumber(config.f_min);
  const double e_hi = ErbNumber(f_max);
  GammatoneFilterbank fb;
  fb.config = config;
  fb.channels.reserve(static_cast<size_t>(config.n_channels));
  for (int m = 0; m < config.n_channels; ++m) {
    const double e = config.n_channels == 1
                         ? 0.5 * (e_lo + e_hi)
                         : e_lo + (e_hi - e_lo) * m / (config.n_channels - 1);
    fb.channels.push_back(MakeChannel(ErbNumberInverse(e), config));
  }
  return fb;
}

Eigen::MatrixXd MagnitudeResponse(const GammatoneFilterbank& fb,
                                  const Eigen::ArrayXd& freqs_hz) {
  const double nyquist = 0.5 * fb.config.sample_rate;
  for (Eigen::Index i = 0; i < freqs_hz.size(); ++i)
    if (!(freqs_hz[i] > 0) || !(freqs_hz[i] < nyquist))
      throw std::invalid_argument(
          "MagnitudeResponse: frequencies must lie in (0, Nyquist)");

  Eigen::MatrixXd db(static_cast<Eigen::Index>(fb.channels.size()),
                     freqs_hz.size());
  for (size_t m = 0; m < fb.channels.size(); ++m) {
    for (Eigen::Index i = 0; i < freqs_hz.size(); ++i) {
      const double omega = 2.0 * M_PI * freqs_hz[i] / fb.config.sample_rate;
      const double mag =
          fb.channels[m].gain *
          RealResponseMagnitude(fb.channels[m], fb.config.order, omega);
      db(static_cast<Eigen::Index>(m), i) = 20.0 * std::log10(mag);
    }
  }
  return db;
}

Eigen::MatrixXd FilterSignal(const GammatoneFilterbank& fb,
                             const AudioClip& clip) {
  CheckClip(clip, "FilterSignal");
  if (clip.sample_rate != fb.config.sample_rate)
    throw std::invalid_argument("FilterSignal: sample rate mismatch");

  const Eigen::Index n = clip.samples.size();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(fb.channels.size()), n);
  Eigen::ArrayXd y;
  for (size_t m = 0; m < fb.channels.size(); ++m) {
    RunChannel(fb.channels[m], fb.config.order, clip.samples, y);
    const Eigen::Index d = std::min(fb.channels[m].delay_samples, n);
    // Advance by the envelope delay; the vacated tail is zero.
    out.row(static_cast<Eigen::Index>(m)).head(n - d) =
        y.tail(n - d).transpose();
    out.row(static_cast<Eigen::Index>(m)).tail(d).setZero();
  }
  return out;
}

Eigen::ArrayXd ChannelImpulseResponse(const GammatoneFilterbank& fb,
                                      int channel, Eigen::Index length) {
  if (channel < 0 || channel >= static_cast<int>(fb.channels.size()))
    throw std::invalid_argument("ChannelImpulseResponse: bad channel");
  Eigen::ArrayXd delta = Eigen::ArrayXd::Zero(length);
  delta[0] = 1.0;
  Eigen::ArrayXd y;
  RunChannel(fb.channels[static_cast<size_t>(channel)], fb.config.order,
             delta, y);
  return y;
}

}  // namespace csid
