// include/csid/experiment/evaluate.h

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

#ifndef CSID_EXPERIMENT_EVALUATE_H_
#define CSID_EXPERIMENT_EVALUATE_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csid/experiment/adapt.h"
#include "csid/nn/model.h"

namespace csid {

// Condition axes for the evaluation matrices.
struct EvalGrid {
  std::vector<NoiseSource> noises;
  std::vector<double> snrs{-5, 0, 5, 10, 15};
  bool include_clean = true;
  std::vector<double> reverb_delays_ms{100, 200, 500, 800};
  std::vector<std::pair<ClipKind, double>> clip_specs{
      {ClipKind::kCenter, 0.3}, {ClipKind::kCenter, 0.6},
      {ClipKind::kCenter, 0.9}, {ClipKind::kPeak, 0.3},
      {ClipKind::kPeak, 0.6},   {ClipKind::kPeak, 0.9}};
};

// One accuracy measurement. Unused axes hold NaN / empty strings.
struct EvalCell {
  std::string condition;  // canonical corruption spec text, or "clean"
  std::string noise;      // "white", "pink" or the noise file path
  double snr_db = std::numeric_limits<double>::quiet_NaN();
  double reverb_ms = std::numeric_limits<double>::quiet_NaN();
  std::string clip_kind;
  double clip_fraction = std::numeric_limits<double>::quiet_NaN();
  long n_correct = 0;
  long n_total = 0;

  double AccuracyPct() const {
    return n_total > 0 ? 100.0 * double(n_correct) / double(n_total) : 0.0;
  }
};

struct EvaluationReport {
  std::vector<EvalCell> cells;
  uint64_t seed = 0;
};

// Accuracy of the model on the manifest's test split under one corruption
// condition (std::nullopt = clean). Test-set corruption seeds live in the
// "eval" realm, so test noise realizations never repeat training ones.
EvalCell EvaluateCondition(SpeakerModel<float>& model,
                           const DatasetManifest& manifest,
                           const std::optional<CorruptionSpec>& corruption,
                           const FrontendConfig& config,
                           const GammatoneFilterbank& fb, uint64_t seed);

// One cell per (noise, SNR) pair plus the clean cell.
EvaluationReport EvaluateNoiseGrid(SpeakerModel<float>& model,
                                   const DatasetManifest& manifest,
                                   const EvalGrid& grid,
                                   const FrontendConfig& config,
                                   uint64_t seed, int threads = 1);

// Reverberation sweep. Without `noisy`, one cell per delay; with it, a
// (delay x SNR) matrix where reverberation precedes the noise mix.
EvaluationReport EvaluateReverbGrid(
    SpeakerModel<float>& model, const DatasetManifest& manifest,
    const EvalGrid& grid,
    const std::optional<std::pair<NoiseSource, std::vector<double>>>& noisy,
    const FrontendConfig& config, uint64_t seed, int threads = 1);

// Clip kind x threshold matrix; each cell averages 5 repeated evaluations
// with distinct seeds (clipping is deterministic, so the repeats double as
// an invariance check).
EvaluationReport EvaluateClipping(SpeakerModel<float>& model,
                                  const DatasetManifest& manifest,
                                  const EvalGrid& grid,
                                  const FrontendConfig& config,
                                  uint64_t seed = 0, int threads = 1);

enum class ReportFormat { kCsv, kPretty, kGnuplot };

// CSV columns: condition,noise,snr_db,reverb_ms,clip_kind,clip_fraction,
// n_correct,n_total,accuracy_pct (accuracy with 4 decimals, rows in grid
// order). Pretty renders aligned tables (delays x SNRs when both axes are
// present); gnuplot emits long-format accuracy-vs-SNR blocks per noise.
void WriteReport(const EvaluationReport& report, const std::string& path,
                 ReportFormat format);
std::string RenderReport(const EvaluationReport& report, ReportFormat format);

}  // namespace csid

#endif  // CSID_EXPERIMENT_EVALUATE_H_
