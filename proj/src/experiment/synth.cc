// src/experiment/synth.cc

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

#include "csid/experiment/synth.h"

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>
#include <vector>

#include "csid/audio.h"
#include "csid/seed.h"
#include "csid/wav.h"

namespace csid {

namespace {

struct VoiceSignature {
  double f0 = 0.0;
  double formants[3] = {0, 0, 0};
  double bandwidths[3] = {0, 0, 0};
};

// Picks a value inside speaker s's cell of [lo, hi] split into n_speakers
// cells, keeping a 20% margin on both cell edges so neighboring speakers
// never overlap.
double CellDraw(double lo, double hi, int speaker, int n_speakers,
                std::mt19937_64& rng) {
  const double width = (hi - lo) / n_speakers;
  std::uniform_real_distribution<double> u(0.2, 0.8);
  return lo + width * (speaker + u(rng));
}

VoiceSignature MakeSignature(int speaker, int n_speakers,
                             std::mt19937_64& rng) {
  VoiceSignature sig;
  sig.f0 = CellDraw(90.0, 230.0, speaker, n_speakers, rng);
  sig.formants[0] = CellDraw(320.0, 880.0, speaker, n_speakers, rng);
  sig.formants[1] = CellDraw(950.0, 2150.0, speaker, n_speakers, rng);
  sig.formants[2] = CellDraw(2300.0, 3500.0, speaker, n_speakers, rng);
  std::uniform_real_distribution<double> bw(60.0, 120.0);
  for (double& b : sig.bandwidths) b = bw(rng);
  return sig;
}

// Two-pole resonator applied in place.
void Resonate(Eigen::ArrayXd& x, double freq, double bandwidth, int fs) {
  const double r = std::exp(-M_PI * bandwidth / fs);
  const double a1 = -2.0 * r * std::cos(2.0 * M_PI * freq / fs);
  const double a2 = r * r;
  double y1 = 0.0, y2 = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double y = x[i] - a1 * y1 - a2 * y2;
    x[i] = y;
    y2 = y1;
    y1 = y;
  }
}

AudioClip SynthUtterance(const VoiceSignature& sig, double seconds, int fs,
                         uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Eigen::Index n = static_cast<Eigen::Index>(std::lround(seconds * fs));

  // Piecewise-linear F0 contour within +-10% of the speaker's base pitch.
  const int n_knots = 9;
  std::vector<double> knots(n_knots);
  std::uniform_real_distribution<double> du(-1.0, 1.0);
  for (double& k : knots) k = du(rng);
  auto contour = [&](Eigen::Index i) {
    const double pos = double(i) / double(n - 1) * (n_knots - 1);
    const int k0 = std::min<int>(static_cast<int>(pos), n_knots - 2);
    const double f = pos - k0;
    return 1.0 + 0.1 * ((1 - f) * knots[k0] + f * knots[k0 + 1]);
  };

  // Glottal pulse train with a touch of aspiration noise.
  Eigen::ArrayXd x = Eigen::ArrayXd::Zero(n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double phase = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    phase += sig.f0 * contour(i) / fs;
    if (phase >= 1.0) {
      phase -= 1.0;
      x[i] = 1.0;
    }
    x[i] += 0.003 * gauss(rng);
  }

  // Soften the source (about -12 dB/octave), then the formant stack.
  for (int pass = 0; pass < 2; ++pass) {
    double y1 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      x[i] = 0.3 * x[i] + 0.7 * y1;
      y1 = x[i];
    }
  }
  for (int f = 0; f < 3; ++f)
    Resonate(x, sig.formants[f], sig.bandwidths[f], fs);

  // Attack/release envelope with slow amplitude modulation.
  std::uniform_real_distribution<double> am_freq(2.0, 4.0);
  std::uniform_real_distribution<double> am_phase(0.0, 2.0 * M_PI);
  const double fm = am_freq(rng), ph = am_phase(rng);
  const Eigen::Index attack = std::min<Eigen::Index>(n / 4, fs * 3 / 100);
  const Eigen::Index release = std::min<Eigen::Index>(n / 4, fs / 10);
  for (Eigen::Index i = 0; i < n; ++i) {
    double env = 1.0 + 0.15 * std::sin(2.0 * M_PI * fm * i / fs + ph);
    if (i < attack) env *= 0.5 * (1 - std::cos(M_PI * i / attack));
    if (i >= n - release)
      env *= 0.5 * (1 - std::cos(M_PI * (n - 1 - i) / release));
    x[i] *= env;
  }

  AudioClip clip;
  clip.sample_rate = fs;
  const double peak = x.abs().maxCoeff();
  clip.samples = peak > 0 ? Eigen::ArrayXd(0.4 * x / peak) : x;
  return clip;
}

}  // namespace

DatasetManifest SynthSpeakerDataset(const SynthConfig& config,
                                    const std::string& out_dir,
                                    uint64_t seed) {
  if (config.n_speakers < 2)
    throw std::invalid_argument("SynthSpeakerDataset: need >= 2 speakers");
  if (config.utts_per_speaker < 2)
    throw std::invalid_argument(
        "SynthSpeakerDataset: need >= 2 utterances per speaker");
  if (config.utt_seconds <= 0 || config.sample_rate <= 0)
    throw std::invalid_argument("SynthSpeakerDataset: bad config");

  std::filesystem::create_directories(out_dir);

  // Train share: nearest to 80%, with at least one utterance on each side.
  const int n_train = std::min(
      config.utts_per_speaker - 1,
      std::max(1, static_cast<int>(std::lround(0.8 * config.utts_per_speaker))));

  DatasetManifest manifest;
  manifest.corpus = "synthetic";
  manifest.sample_rate = config.sample_rate;
  manifest.root_dir = out_dir;
  for (int s = 0; s < config.n_speakers; ++s) {
    std::ostringstream spk;
    spk << "spk" << (s < 10 ? "0" : "") << s;
    std::mt19937_64 sig_rng(DeriveSeed(seed, "signature:" + spk.str()));
    const VoiceSignature sig =
        MakeSignature(s, config.n_speakers, sig_rng);
    for (int u = 0; u < config.utts_per_speaker; ++u) {
      std::ostringstream utt;
      utt << "utt" << (u < 10 ? "0" : "") << u;
      const AudioClip clip = SynthUtterance(
          sig, config.utt_seconds, config.sample_rate,
          DeriveSeed(seed, "utterance:" + spk.str() + "/" + utt.str()));
      const std::string file_name = spk.str() + "_" + utt.str() + ".wav";
      SaveWav(clip, (std::filesystem::path(out_dir) / file_name).string());

      ManifestEntry entry;
      entry.speaker_id = spk.str();
      entry.utterance_id = utt.str();
      entry.wav_path = file_name;
      entry.split = u < n_train ? Split::kTrain : Split::kTest;
      manifest.entries.push_back(std::move(entry));
    }
  }
  SaveManifest(manifest,
               (std::filesystem::path(out_dir) / "manifest.csv").string());
  ValidateManifest(manifest);
  return manifest;
}

}  // namespace csid
