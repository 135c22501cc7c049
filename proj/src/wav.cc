// src/wav.cc

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

#include "csid/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "csid/error.h"

namespace csid {

namespace {

constexpr uint16_t kFormatPcm = 0x0001;
constexpr uint16_t kFormatIeeeFloat = 0x0003;

[[noreturn]] void BadWav(const std::string& detail) {
  throw IoError("unsupported or corrupt WAV: " + detail);
}

uint16_t ReadU16(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t ReadU32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

void WriteU16(std::ostream& os, uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>(v >> 8)};
  os.write(reinterpret_cast<const char*>(b), 2);
}

void WriteU32(std::ostream& os, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

}  // namespace

AudioClip LoadWav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open WAV file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on WAV file: " + path);

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    BadWav("missing RIFF/WAVE header");

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  size_t data_len = 0;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* hdr = bytes.data() + pos;
    uint32_t chunk_len = ReadU32(hdr + 4);
    size_t body = pos + 8;
    if (body + chunk_len > bytes.size()) BadWav("truncated chunk");
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (chunk_len < 16) BadWav("fmt chunk too short");
      format = ReadU16(hdr + 8);
      channels = ReadU16(hdr + 10);
      rate = ReadU32(hdr + 12);
      bits = ReadU16(hdr + 22);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = bytes.data() + body;
      data_len = chunk_len;
    }
    pos = body + chunk_len + (chunk_len & 1);  // chunks are word aligned
  }

  if (!have_fmt) BadWav("missing fmt chunk");
  if (data == nullptr) BadWav("missing data chunk");
  if (channels == 0 || rate == 0) BadWav("bad fmt fields");
  if (format == kFormatPcm) {
    if (bits != 16) BadWav("only 16-bit PCM is supported");
  } else if (format == kFormatIeeeFloat) {
    if (bits != 32) BadWav("only 32-bit float is supported");
  } else {
    BadWav("unsupported codec tag " + std::to_string(format));
  }

  const size_t bytes_per_sample = bits / 8;
  const size_t frame_bytes = bytes_per_sample * channels;
  const size_t n_frames = data_len / frame_bytes;
  if (n_frames == 0) BadWav("zero-length audio");

  AudioClip clip;
  clip.sample_rate = static_cast<int>(rate);
  clip.samples.resize(static_cast<Eigen::Index>(n_frames));
  for (size_t i = 0; i < n_frames; ++i) {
    double acc = 0.0;
    const unsigned char* frame = data + i * frame_bytes;
    for (unsigned c = 0; c < channels; ++c) {
      const unsigned char* s = frame + c * bytes_per_sample;
      if (format == kFormatPcm) {
        int16_t v = static_cast<int16_t>(ReadU16(s));
        acc += v / 32768.0;
      } else {
        float f;
        std::memcpy(&f, s, 4);
        acc += f;
      }
    }
    clip.samples[static_cast<Eigen::Index>(i)] = acc / channels;
  }
  if (!clip.samples.isFinite().all()) BadWav("non-finite float samples");
  return clip;
}

void SaveWav(const AudioClip& clip, const std::string& path) {
  CheckClip(clip, "SaveWav");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);

  const uint32_t n = static_cast<uint32_t>(clip.samples.size());
  const uint32_t data_bytes = n * 2;
  out.write("RIFF", 4);
  WriteU32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  WriteU32(out, 16);
  WriteU16(out, kFormatPcm);
  WriteU16(out, 1);  // mono
  WriteU32(out, static_cast<uint32_t>(clip.sample_rate));
  WriteU32(out, static_cast<uint32_t>(clip.sample_rate) * 2);
  WriteU16(out, 2);   // block align
  WriteU16(out, 16);  // bits
  out.write("data", 4);
  WriteU32(out, data_bytes);
  for (Eigen::Index i = 0; i < clip.samples.size(); ++i) {
    double x = std::clamp(clip.samples[i], -1.0, 1.0);
    long q = std::lround(x * 32768.0);
    q = std::clamp(q, -32768L, 32767L);
    WriteU16(out, static_cast<uint16_t>(static_cast<int16_t>(q)));
  }
  if (!out) throw IoError("write failure: " + path);
}

}  // namespace csid
