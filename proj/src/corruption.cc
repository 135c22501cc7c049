// src/corruption.cc

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

#include "csid/corruption.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "csid/clipping.h"
#include "csid/reverb.h"
#include "csid/seed.h"

namespace csid {

namespace {

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  return parts;
}

[[noreturn]] void BadSpec(const std::string& detail) {
  throw std::invalid_argument("bad corruption spec: " + detail);
}

double ParseNumber(const std::string& s, const std::string& what) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    BadSpec("cannot parse " + what + " from '" + s + "'");
  }
  if (used != s.size()) BadSpec("trailing junk in " + what + " '" + s + "'");
  if (!std::isfinite(v)) BadSpec(what + " must be finite");
  return v;
}

std::string FormatNumber(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

CorruptionSpec ParseCorruptionSpec(const std::string& text) {
  CorruptionSpec spec;
  if (text.empty()) BadSpec("empty string");
  for (const std::string& field : Split(text, ';')) {
    const size_t eq = field.find('=');
    if (eq == std::string::npos) BadSpec("field without '=': " + field);
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "noise") {
      if (spec.noise) BadSpec("duplicate noise field");
      const size_t at = value.rfind('@');
      if (at == std::string::npos) BadSpec("noise needs '@<snr>dB'");
      std::string src = value.substr(0, at);
      std::string snr = value.substr(at + 1);
      if (snr.size() < 3 || snr.substr(snr.size() - 2) != "dB")
        BadSpec("SNR must end in 'dB'");
      CorruptionSpec::Noise noise;
      noise.snr_db = ParseNumber(snr.substr(0, snr.size() - 2), "SNR");
      if (src == "white") {
        noise.source.kind = NoiseSource::Kind::kWhite;
      } else if (src == "pink") {
        noise.source.kind = NoiseSource::Kind::kPink;
      } else if (src.rfind("file:", 0) == 0) {
        noise.source.kind = NoiseSource::Kind::kFile;
        noise.source.file_path = src.substr(5);
        if (noise.source.file_path.empty()) BadSpec("empty noise file path");
      } else {
        BadSpec("unknown noise source '" + src + "'");
      }
      spec.noise = noise;
    } else if (key == "reverb") {
      if (spec.reverb_delay_ms) BadSpec("duplicate reverb field");
      if (value.size() < 3 || value.substr(value.size() - 2) != "ms")
        BadSpec("reverb needs '<delay>ms'");
      const double ms =
          ParseNumber(value.substr(0, value.size() - 2), "reverb delay");
      if (ms <= 0) BadSpec("reverb delay must be positive");
      spec.reverb_delay_ms = ms;
    } else if (key == "clip") {
      if (spec.clip) BadSpec("duplicate clip field");
      const size_t colon = value.find(':');
      if (colon == std::string::npos) BadSpec("clip needs '<kind>:<frac>'");
      const std::string kind = value.substr(0, colon);
      CorruptionSpec::Clip clip;
      if (kind == "center")
        clip.kind = ClipKind::kCenter;
      else if (kind == "peak")
        clip.kind = ClipKind::kPeak;
      else
        BadSpec("unknown clip kind '" + kind + "'");
      clip.threshold_fraction =
          ParseNumber(value.substr(colon + 1), "clip fraction");
      if (clip.threshold_fraction <= 0 || clip.threshold_fraction > 1)
        BadSpec("clip fraction must be in (0, 1]");
      spec.clip = clip;
    } else {
      BadSpec("unknown field '" + key + "'");
    }
  }
  if (spec.Empty()) BadSpec("no stages");
  return spec;
}

std::string FormatCorruptionSpec(const CorruptionSpec& spec) {
  std::vector<std::string> fields;
  if (spec.noise) {
    std::string src;
    switch (spec.noise->source.kind) {
      case NoiseSource::Kind::kWhite: src = "white"; break;
      case NoiseSource::Kind::kPink: src = "pink"; break;
      case NoiseSource::Kind::kFile:
        src = "file:" + spec.noise->source.file_path;
        break;
    }
    fields.push_back("noise=" + src + "@" + FormatNumber(spec.noise->snr_db) +
                     "dB");
  }
  if (spec.reverb_delay_ms)
    fields.push_back("reverb=" + FormatNumber(*spec.reverb_delay_ms) + "ms");
  if (spec.clip)
    fields.push_back(std::string("clip=") + ClipKindName(spec.clip->kind) +
                     ":" + FormatNumber(spec.clip->threshold_fraction));
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ';';
    out += fields[i];
  }
  return out;
}

AudioClip MixAtSnr(const AudioClip& speech, const AudioClip& noise,
                   double snr_db) {
  CheckClip(speech, "MixAtSnr(speech)");
  CheckClip(noise, "MixAtSnr(noise)");
  if (speech.sample_rate != noise.sample_rate)
    throw std::invalid_argument("MixAtSnr: sample rate mismatch");
  if (noise.samples.size() < speech.samples.size())
    throw std::invalid_argument("MixAtSnr: noise shorter than speech");
  if (!std::isfinite(snr_db))
    throw std::invalid_argument("MixAtSnr: SNR must be finite");

  const Eigen::Index n = speech.samples.size();
  const Eigen::ArrayXd noise_cut = noise.samples.head(n);
  const double p_speech = speech.samples.square().mean();
  const double p_noise = noise_cut.square().mean();
  if (p_speech <= 0)
    throw std::invalid_argument("MixAtSnr: zero-power speech");
  if (p_noise <= 0) throw std::invalid_argument("MixAtSnr: zero-power noise");

  const double gain =
      std::sqrt(p_speech / (p_noise * std::pow(10.0, snr_db / 10.0)));
  AudioClip out;
  out.sample_rate = speech.sample_rate;
  out.samples = speech.samples + gain * noise_cut;
  return out;
}

double MeasuredSnrDb(const AudioClip& speech, const AudioClip& noise) {
  return 10.0 * std::log10(MeanPower(speech) / MeanPower(noise));
}

AudioClip ApplyCorruption(const AudioClip& clip, const CorruptionSpec& spec,
                          uint64_t seed) {
  double ignored;
  return ApplyCorruption(clip, spec, seed, &ignored);
}

AudioClip ApplyCorruption(const AudioClip& clip, const CorruptionSpec& spec,
                          uint64_t seed, double* measured_snr_db) {
  CheckClip(clip, "ApplyCorruption");
  if (spec.Empty())
    throw std::invalid_argument("ApplyCorruption: empty corruption spec");
  *measured_snr_db = std::numeric_limits<double>::quiet_NaN();

  AudioClip current = clip;
  if (spec.reverb_delay_ms) {
    const RoomImpulseResponse rir = SynthRir(
        *spec.reverb_delay_ms, current.sample_rate, DeriveSeed(seed, "rir"));
    current = AddReverb(current, rir);
  }
  if (spec.noise) {
    const AudioClip noise =
        RenderNoise(spec.noise->source, current.samples.size(),
                    current.sample_rate, DeriveSeed(seed, "noise"));
    // SNR is taken against the reverberated speech power.
    const double p_speech = current.samples.square().mean();
    const double p_noise = noise.samples.square().mean();
    if (p_speech <= 0)
      throw std::invalid_argument("ApplyCorruption: zero-power speech");
    if (p_noise <= 0)
      throw std::invalid_argument("ApplyCorruption: zero-power noise");
    const double gain = std::sqrt(
        p_speech / (p_noise * std::pow(10.0, spec.noise->snr_db / 10.0)));
    AudioClip scaled;
    scaled.sample_rate = current.sample_rate;
    scaled.samples = gain * noise.samples;
    *measured_snr_db = MeasuredSnrDb(current, scaled);
    current.samples += scaled.samples;
  }
  if (spec.clip) {
    current = spec.clip->kind == ClipKind::kCenter
                  ? CenterClip(current, spec.clip->threshold_fraction)
                  : PeakClip(current, spec.clip->threshold_fraction);
  }
  return current;
}

const char* ClipKindName(ClipKind kind) {
  return kind == ClipKind::kCenter ? "center" : "peak";
}

}  // namespace csid
