// src/model_io.cc

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

#include "csid/nn/model_io.h"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "csid/error.h"

namespace csid {

namespace {

constexpr char kMagic[4] = {'C', 'S', 'P', 'K'};
constexpr uint16_t kVersion = 1;

void WriteU32(std::ostream& os, uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), 4);
}

uint32_t ReadU32(std::istream& is, const std::string& path) {
  uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  if (!is) throw std::runtime_error("truncated model file: " + path);
  return v;
}

ModelHeader ReadHeader(std::istream& in, const std::string& path) {
  char magic[4];
  uint16_t version = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 2);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("not a model file: " + path);
  if (version != kVersion)
    throw std::runtime_error("unsupported model version in " + path);
  ModelHeader header;
  header.n_blocks = ReadU32(in, path);
  if (header.n_blocks == 0 || header.n_blocks > 64)
    throw std::runtime_error("corrupt model header: " + path);
  header.kernels.resize(header.n_blocks);
  for (uint32_t& k : header.kernels) k = ReadU32(in, path);
  header.n_speakers = ReadU32(in, path);
  header.input_h = ReadU32(in, path);
  header.input_w = ReadU32(in, path);
  return header;
}

}  // namespace

void SaveModel(SpeakerModel<float>& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(kMagic, 4);
  out.write(reinterpret_cast<const char*>(&kVersion), 2);
  WriteU32(out, static_cast<uint32_t>(SpeakerModel<float>::kKernels.size()));
  for (Eigen::Index k : SpeakerModel<float>::kKernels)
    WriteU32(out, static_cast<uint32_t>(k));
  WriteU32(out, static_cast<uint32_t>(model.n_speakers()));
  WriteU32(out, static_cast<uint32_t>(model.input_h()));
  WriteU32(out, static_cast<uint32_t>(model.input_w()));
  for (const auto& group : model.ParamGroups(true)) {
    WriteU32(out, static_cast<uint32_t>(group.size));
    out.write(reinterpret_cast<const char*>(group.value),
              group.size * static_cast<Eigen::Index>(sizeof(float)));
  }
  if (!out) throw IoError("write failure: " + path);
}

SpeakerModel<float> LoadModel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  const ModelHeader header = ReadHeader(in, path);

  if (header.kernels.size() != SpeakerModel<float>::kKernels.size())
    throw std::runtime_error("model architecture mismatch: " + path);
  for (size_t i = 0; i < header.kernels.size(); ++i)
    if (header.kernels[i] !=
        static_cast<uint32_t>(SpeakerModel<float>::kKernels[i]))
      throw std::runtime_error("model architecture mismatch: " + path);

  SpeakerModel<float> model(static_cast<int>(header.n_speakers),
                            static_cast<Eigen::Index>(header.input_h),
                            static_cast<Eigen::Index>(header.input_w),
                            /*seed=*/0);
  for (const auto& group : model.ParamGroups(true)) {
    const uint32_t stored = ReadU32(in, path);
    if (stored != static_cast<uint32_t>(group.size))
      throw std::runtime_error("model tensor shape mismatch (" + group.name +
                               "): " + path);
    in.read(reinterpret_cast<char*>(group.value),
            group.size * static_cast<Eigen::Index>(sizeof(float)));
    if (!in) throw std::runtime_error("truncated model file: " + path);
  }
  return model;
}

ModelHeader ReadModelHeader(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  return ReadHeader(in, path);
}

void WriteTrainLog(const std::vector<EpochStats>& log,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "epoch,loss,train_acc\n";
  for (const EpochStats& e : log) {
    std::ostringstream row;
    row << e.epoch << "," << std::setprecision(10) << e.loss << ","
        << std::setprecision(6) << e.train_accuracy;
    out << row.str() << "\n";
  }
  if (!out) throw IoError("write failure: " + path);
}

}  // namespace csid
