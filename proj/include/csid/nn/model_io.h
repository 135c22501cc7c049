// include/csid/nn/model_io.h

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

#ifndef CSID_NN_MODEL_IO_H_
#define CSID_NN_MODEL_IO_H_

#include <string>

#include "csid/nn/model.h"

namespace csid {

// Model container: magic "CSPK", u16 version, the architecture descriptor
// (u32 block count and per-block kernel counts), u32 n_speakers, u32 input
// height and width, then every parameter tensor in declaration order as a
// u32 size followed by little-endian float32 values. Running batch-norm
// statistics are stored alongside the trainables, so a save/load round
// trip reproduces predictions bit for bit.
void SaveModel(SpeakerModel<float>& model, const std::string& path);
SpeakerModel<float> LoadModel(const std::string& path);

// Reads just the header. Useful for format checks and tooling.
struct ModelHeader {
  uint32_t n_blocks = 0;
  std::vector<uint32_t> kernels;
  uint32_t n_speakers = 0;
  uint32_t input_h = 0;
  uint32_t input_w = 0;
};
ModelHeader ReadModelHeader(const std::string& path);

// Training log CSV: header "epoch,loss,train_acc" and one row per epoch.
void WriteTrainLog(const std::vector<EpochStats>& log,
                   const std::string& path);

}  // namespace csid

#endif  // CSID_NN_MODEL_IO_H_
