// src/experiment/evaluate.cc

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

#include "csid/experiment/evaluate.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "csid/error.h"
#include "csid/seed.h"
#include "csid/wav.h"

namespace csid {

namespace {

std::string NoiseLabel(const NoiseSource& source) {
  return source.kind == NoiseSource::Kind::kFile ? source.file_path
                                                 : NoiseKindName(source.kind);
}

// Runs fn(i) for i in [0, n) on `threads` workers. Results must not depend
// on scheduling; each job owns its output slot.
void ParallelFor(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

// Evaluating in parallel needs one model instance per worker because the
// forward pass caches activations inside the layers.
EvaluationReport RunCells(
    SpeakerModel<float>& model, const DatasetManifest& manifest,
    const FrontendConfig& config, uint64_t seed, int threads,
    const std::vector<std::optional<CorruptionSpec>>& conditions,
    const std::function<EvalCell(const std::optional<CorruptionSpec>&)>&
        describe) {
  const GammatoneFilterbank fb = MakeFilterbank(config.Filterbank());
  EvaluationReport report;
  report.seed = seed;
  report.cells.resize(conditions.size());

  threads = std::max(1, threads);
  std::vector<SpeakerModel<float>> replicas;
  if (threads > 1)
    replicas.assign(static_cast<size_t>(threads), model);

  std::atomic<int> worker_id{0};
  thread_local int my_worker = -1;
  ParallelFor(static_cast<int>(conditions.size()), threads, [&](int i) {
    SpeakerModel<float>* m = &model;
    if (threads > 1) {
      if (my_worker < 0) my_worker = worker_id.fetch_add(1);
      m = &replicas[static_cast<size_t>(my_worker % threads)];
    }
    EvalCell cell = describe(conditions[static_cast<size_t>(i)]);
    const EvalCell counted = EvaluateCondition(
        *m, manifest, conditions[static_cast<size_t>(i)], config, fb, seed);
    cell.n_correct = counted.n_correct;
    cell.n_total = counted.n_total;
    report.cells[static_cast<size_t>(i)] = std::move(cell);
  });
  return report;
}

EvalCell DescribeCondition(const std::optional<CorruptionSpec>& corruption) {
  EvalCell cell;
  if (!corruption) {
    cell.condition = "clean";
    return cell;
  }
  cell.condition = FormatCorruptionSpec(*corruption);
  if (corruption->noise) {
    cell.noise = NoiseLabel(corruption->noise->source);
    cell.snr_db = corruption->noise->snr_db;
  }
  if (corruption->reverb_delay_ms) cell.reverb_ms = *corruption->reverb_delay_ms;
  if (corruption->clip) {
    cell.clip_kind = ClipKindName(corruption->clip->kind);
    cell.clip_fraction = corruption->clip->threshold_fraction;
  }
  return cell;
}

std::string FormatCsvNumber(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

EvalCell EvaluateCondition(SpeakerModel<float>& model,
                           const DatasetManifest& manifest,
                           const std::optional<CorruptionSpec>& corruption,
                           const FrontendConfig& config,
                           const GammatoneFilterbank& fb, uint64_t seed) {
  const auto entries = manifest.SplitEntries(Split::kTest);
  if (entries.empty())
    throw std::invalid_argument("EvaluateCondition: empty test split");
  const std::string condition =
      corruption ? FormatCorruptionSpec(*corruption) : "clean";

  EvalCell cell = DescribeCondition(corruption);
  for (const ManifestEntry* entry : entries) {
    const AudioClip raw = LoadWav(manifest.ResolveWavPath(*entry));
    const uint64_t utt_seed =
        DeriveSeed(seed, "eval:" + condition + ":" + entry->speaker_id + "/" +
                             entry->utterance_id);
    const FeatureImage image = UtteranceToImage(
        raw, fb, config, corruption ? &*corruption : nullptr, utt_seed);
    const Prediction pred = Predict(model, image.values);
    cell.n_correct += pred.speaker == manifest.SpeakerIndex(entry->speaker_id);
    ++cell.n_total;
  }
  return cell;
}

EvaluationReport EvaluateNoiseGrid(SpeakerModel<float>& model,
                                   const DatasetManifest& manifest,
                                   const EvalGrid& grid,
                                   const FrontendConfig& config,
                                   uint64_t seed, int threads) {
  if (grid.noises.empty() && !grid.include_clean)
    throw std::invalid_argument("EvaluateNoiseGrid: empty grid");
  std::vector<std::optional<CorruptionSpec>> conditions;
  for (const NoiseSource& noise : grid.noises)
    for (const double snr : grid.snrs) {
      CorruptionSpec spec;
      spec.noise = CorruptionSpec::Noise{noise, snr};
      conditions.emplace_back(spec);
    }
  if (grid.include_clean) conditions.emplace_back(std::nullopt);
  return RunCells(model, manifest, config, seed, threads, conditions,
                  DescribeCondition);
}

EvaluationReport EvaluateReverbGrid(
    SpeakerModel<float>& model, const DatasetManifest& manifest,
    const EvalGrid& grid,
    const std::optional<std::pair<NoiseSource, std::vector<double>>>& noisy,
    const FrontendConfig& config, uint64_t seed, int threads) {
  if (grid.reverb_delays_ms.empty())
    throw std::invalid_argument("EvaluateReverbGrid: no delays");
  std::vector<std::optional<CorruptionSpec>> conditions;
  for (const double delay : grid.reverb_delays_ms) {
    if (!noisy) {
      CorruptionSpec spec;
      spec.reverb_delay_ms = delay;
      conditions.emplace_back(spec);
      continue;
    }
    for (const double snr : noisy->second) {
      CorruptionSpec spec;
      spec.reverb_delay_ms = delay;
      spec.noise = CorruptionSpec::Noise{noisy->first, snr};
      conditions.emplace_back(spec);
    }
  }
  return RunCells(model, manifest, config, seed, threads, conditions,
                  DescribeCondition);
}

EvaluationReport EvaluateClipping(SpeakerModel<float>& model,
                                  const DatasetManifest& manifest,
                                  const EvalGrid& grid,
                                  const FrontendConfig& config, uint64_t seed,
                                  int threads) {
  if (grid.clip_specs.empty())
    throw std::invalid_argument("EvaluateClipping: no clip specs");
  constexpr int kRepeats = 5;
  const GammatoneFilterbank fb = MakeFilterbank(config.Filterbank());

  EvaluationReport report;
  report.seed = seed;
  report.cells.resize(grid.clip_specs.size());
  ParallelFor(
      static_cast<int>(grid.clip_specs.size()), threads, [&](int i) {
        const auto& [kind, fraction] = grid.clip_specs[static_cast<size_t>(i)];
        CorruptionSpec spec;
        spec.clip = CorruptionSpec::Clip{kind, fraction};
        EvalCell cell = DescribeCondition(spec);
        // Distinct-seed repeats whose mean is the reported accuracy.
        // Clipping is deterministic, so the runs must agree exactly; a
        // disagreement means a reproducibility bug and is fatal.
        for (int rep = 0; rep < kRepeats; ++rep) {
          const EvalCell one = EvaluateCondition(
              model, manifest, spec, config, fb,
              DeriveSeed(seed, "clip-rep" + std::to_string(rep)));
          if (rep == 0) {
            cell.n_correct = one.n_correct;
            cell.n_total = one.n_total;
          } else if (one.n_correct != cell.n_correct ||
                     one.n_total != cell.n_total) {
            throw std::runtime_error(
                "EvaluateClipping: repeated runs disagree");
          }
        }
        report.cells[static_cast<size_t>(i)] = std::move(cell);
      });
  return report;
}

std::string RenderReport(const EvaluationReport& report, ReportFormat format) {
  if (report.cells.empty()) throw std::invalid_argument("empty report");
  std::ostringstream os;

  if (format == ReportFormat::kCsv) {
    os << "condition,noise,snr_db,reverb_ms,clip_kind,clip_fraction,"
          "n_correct,n_total,accuracy_pct\n";
    for (const EvalCell& c : report.cells) {
      os << c.condition << "," << c.noise << "," << FormatCsvNumber(c.snr_db)
         << "," << FormatCsvNumber(c.reverb_ms) << "," << c.clip_kind << ","
         << FormatCsvNumber(c.clip_fraction) << "," << c.n_correct << ","
         << c.n_total << "," << std::fixed << std::setprecision(4)
         << c.AccuracyPct() << "\n";
      os.unsetf(std::ios_base::fixed);
    }
    return os.str();
  }

  if (format == ReportFormat::kGnuplot) {
    // Long format for accuracy-vs-SNR curves: one block per noise.
    std::map<std::string, std::vector<const EvalCell*>> by_noise;
    for (const EvalCell& c : report.cells)
      if (!std::isnan(c.snr_db)) by_noise[c.noise].push_back(&c);
    for (const EvalCell& c : report.cells)
      if (c.condition == "clean")
        os << "# clean accuracy: " << std::fixed << std::setprecision(4)
           << c.AccuracyPct() << "\n";
    bool first = true;
    for (auto& [noise, cells] : by_noise) {
      if (!first) os << "\n\n";
      first = false;
      os << "# noise=" << noise << "\n";
      std::sort(cells.begin(), cells.end(),
                [](const EvalCell* a, const EvalCell* b) {
                  return a->snr_db < b->snr_db;
                });
      for (const EvalCell* c : cells)
        os << c->snr_db << " " << std::fixed << std::setprecision(4)
           << c->AccuracyPct() << "\n";
      os.unsetf(std::ios_base::fixed);
    }
    return os.str();
  }

  // Pretty: a delays x SNRs table when both axes are present, otherwise a
  // flat condition/accuracy listing.
  std::set<double> delays, snrs;
  for (const EvalCell& c : report.cells) {
    if (!std::isnan(c.reverb_ms)) delays.insert(c.reverb_ms);
    if (!std::isnan(c.snr_db)) snrs.insert(c.snr_db);
  }
  if (!delays.empty() && !snrs.empty()) {
    os << std::setw(16) << "delay_ms \\ snr";
    for (const double s : snrs) os << std::setw(10) << s;
    os << "\n";
    for (const double d : delays) {
      os << std::setw(16) << d;
      for (const double s : snrs) {
        const EvalCell* found = nullptr;
        for (const EvalCell& c : report.cells)
          if (c.reverb_ms == d && c.snr_db == s) found = &c;
        if (found)
          os << std::setw(10) << std::fixed << std::setprecision(2)
             << found->AccuracyPct();
        else
          os << std::setw(10) << "-";
        os.unsetf(std::ios_base::fixed);
      }
      os << "\n";
    }
    return os.str();
  }
  size_t width = 9;
  for (const EvalCell& c : report.cells)
    width = std::max(width, c.condition.size());
  os << std::left << std::setw(static_cast<int>(width) + 2) << "condition"
     << std::right << std::setw(10) << "correct" << std::setw(8) << "total"
     << std::setw(12) << "accuracy%" << "\n";
  for (const EvalCell& c : report.cells) {
    os << std::left << std::setw(static_cast<int>(width) + 2) << c.condition
       << std::right << std::setw(10) << c.n_correct << std::setw(8)
       << c.n_total << std::setw(12) << std::fixed << std::setprecision(4)
       << c.AccuracyPct() << "\n";
    os.unsetf(std::ios_base::fixed);
  }
  return os.str();
}

void WriteReport(const EvaluationReport& report, const std::string& path,
                 ReportFormat format) {
  const std::string body = RenderReport(report, format);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << body;
  if (!out) throw IoError("write failure: " + path);
}

}  // namespace csid
