// src/cochleagram.cc

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

#include "csid/cochleagram.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "csid/error.h"

namespace csid {

namespace {

constexpr double kEnergyFloor = 1e-10;
constexpr char kCgrmMagic[4] = {'C', 'G', 'R', 'M'};
constexpr uint16_t kCgrmVersion = 1;

// Sample positions for resizing length `in` to length `out` so that the
// first and last samples coincide (identity when in == out).
double SourcePos(Eigen::Index i, Eigen::Index out, Eigen::Index in) {
  if (out <= 1 || in <= 1) return 0.5 * (in - 1);
  return static_cast<double>(i) * (in - 1) / (out - 1);
}

}  // namespace

Cochleagram ComputeCochleagram(const GammatoneFilterbank& fb,
                               const AudioClip& clip, Eigen::Index frame_len) {
  if (frame_len == 0)
    frame_len = static_cast<Eigen::Index>(
        std::lround(0.040 * fb.config.sample_rate));
  if (frame_len < 2 || frame_len % 2 != 0)
    throw std::invalid_argument(
        "ComputeCochleagram: frame_len must be even and >= 2");
  if (clip.samples.size() < frame_len)
    throw std::invalid_argument(
        "ComputeCochleagram: clip shorter than one frame");

  const Eigen::MatrixXd bands = FilterSignal(fb, clip);
  const Eigen::Index hop = frame_len / 2;
  const Eigen::Index n_frames = (clip.samples.size() - frame_len) / hop + 1;

  Cochleagram coch;
  coch.frame_len = frame_len;
  coch.hop = hop;
  coch.source_sample_rate = clip.sample_rate;
  coch.values.resize(bands.rows(), n_frames);
  for (Eigen::Index j = 0; j < n_frames; ++j) {
    coch.values.col(j) =
        (bands.middleCols(j * hop, frame_len).array().square().rowwise().mean() +
         kEnergyFloor)
            .log()
            .matrix();
  }
  return coch;
}

FeatureImage ToFeatureImage(const Cochleagram& coch, Eigen::Index height,
                            Eigen::Index width) {
  if (coch.values.size() == 0)
    throw std::invalid_argument("ToFeatureImage: empty cochleagram");
  if (height < 1 || width < 1)
    throw std::invalid_argument("ToFeatureImage: bad target size");

  const Eigen::MatrixXd& src = coch.values;
  FeatureImage img;
  img.values.resize(height, width);
  for (Eigen::Index r = 0; r < height; ++r) {
    const double y = SourcePos(r, height, src.rows());
    const Eigen::Index y0 =
        std::min<Eigen::Index>(static_cast<Eigen::Index>(y), src.rows() - 1);
    const Eigen::Index y1 = std::min<Eigen::Index>(y0 + 1, src.rows() - 1);
    const double fy = y - static_cast<double>(y0);
    for (Eigen::Index c = 0; c < width; ++c) {
      const double x = SourcePos(c, width, src.cols());
      const Eigen::Index x0 =
          std::min<Eigen::Index>(static_cast<Eigen::Index>(x), src.cols() - 1);
      const Eigen::Index x1 = std::min<Eigen::Index>(x0 + 1, src.cols() - 1);
      const double fx = x - static_cast<double>(x0);
      img.values(r, c) = (1 - fy) * ((1 - fx) * src(y0, x0) + fx * src(y0, x1)) +
                         fy * ((1 - fx) * src(y1, x0) + fx * src(y1, x1));
    }
  }

  const double lo = img.values.minCoeff();
  const double hi = img.values.maxCoeff();
  if (hi > lo)
    img.values = (img.values.array() - lo) / (hi - lo);
  else
    img.values.setConstant(0.5);
  return img;
}

void WriteCgrm(const Eigen::MatrixXd& values, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(kCgrmMagic, 4);
  const uint16_t version = kCgrmVersion;
  const uint32_t rows = static_cast<uint32_t>(values.rows());
  const uint32_t cols = static_cast<uint32_t>(values.cols());
  out.write(reinterpret_cast<const char*>(&version), 2);
  out.write(reinterpret_cast<const char*>(&rows), 4);
  out.write(reinterpret_cast<const char*>(&cols), 4);
  for (Eigen::Index r = 0; r < values.rows(); ++r)
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      const float v = static_cast<float>(values(r, c));
      out.write(reinterpret_cast<const char*>(&v), 4);
    }
  if (!out) throw IoError("write failure: " + path);
}

Eigen::MatrixXd ReadCgrm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  char magic[4];
  uint16_t version = 0;
  uint32_t rows = 0, cols = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 2);
  in.read(reinterpret_cast<char*>(&rows), 4);
  in.read(reinterpret_cast<char*>(&cols), 4);
  if (!in || std::memcmp(magic, kCgrmMagic, 4) != 0)
    throw std::runtime_error("not a CGRM file: " + path);
  if (version != kCgrmVersion)
    throw std::runtime_error("unsupported CGRM version in " + path);
  Eigen::MatrixXd values(rows, cols);
  for (uint32_t r = 0; r < rows; ++r)
    for (uint32_t c = 0; c < cols; ++c) {
      float v;
      in.read(reinterpret_cast<char*>(&v), 4);
      values(r, c) = v;
    }
  if (!in) throw std::runtime_error("truncated CGRM file: " + path);
  return values;
}

void WritePgm(const Eigen::MatrixXd& values, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
  out << "P5\n" << values.cols() << " " << values.rows() << "\n255\n";
  std::vector<unsigned char> row(static_cast<size_t>(values.cols()));
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c)
      row[static_cast<size_t>(c)] =
          static_cast<unsigned char>(std::lround((values(r, c) - lo) * scale));
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw IoError("write failure: " + path);
}

}  // namespace csid
