// tools/csid.cc

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

// Single binary exposing the pipeline as subcommands so experiments are
// reproducible from shell scripts. Exit codes: 0 success, 1 internal
// error, 2 I/O, 3 usage or parameter error. All randomness flows from
// --seed; identical command lines give byte-identical outputs.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "csid/cochleagram.h"
#include "csid/corruption.h"
#include "csid/error.h"
#include "csid/experiment/evaluate.h"
#include "csid/experiment/synth.h"
#include "csid/nn/gradcheck.h"
#include "csid/nn/model_io.h"
#include "csid/wav.h"

namespace {

using namespace csid;

struct GlobalOptions {
  uint64_t seed = 42;
  int sample_rate = 8000;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  int verbosity = 0;
};

struct FrontendFlags {
  int channels = 128;
  double fmin = 50.0;
  double fmax = 8000.0;
  double frame_ms = 40.0;
  std::string image = "500x400";

  void Register(CLI::App* cmd) {
    cmd->add_option("--channels", channels, "Filterbank channels");
    cmd->add_option("--fmin", fmin, "Lowest center frequency (Hz)");
    cmd->add_option("--fmax", fmax, "Highest center frequency (Hz)");
    cmd->add_option("--frame-ms", frame_ms, "Frame length (ms), 50% overlap");
    cmd->add_option("--image", image, "Feature image size HxW");
  }

  FrontendConfig Build(const GlobalOptions& global) const {
    FrontendConfig config;
    config.sample_rate = global.sample_rate;
    config.n_channels = channels;
    config.f_min = fmin;
    config.f_max = fmax;
    config.frame_ms = frame_ms;
    const size_t x = image.find('x');
    if (x == std::string::npos)
      throw std::invalid_argument("--image must look like 500x400");
    config.image_h = std::stol(image.substr(0, x));
    config.image_w = std::stol(image.substr(x + 1));
    if (config.image_h < 1 || config.image_w < 1)
      throw std::invalid_argument("--image dims must be positive");
    return config;
  }
};

NoiseSource ParseNoiseName(const std::string& name) {
  NoiseSource source;
  if (name == "white") {
    source.kind = NoiseSource::Kind::kWhite;
  } else if (name == "pink") {
    source.kind = NoiseSource::Kind::kPink;
  } else if (name.rfind("file:", 0) == 0) {
    source.kind = NoiseSource::Kind::kFile;
    source.file_path = name.substr(5);
    if (source.file_path.empty())
      throw std::invalid_argument("empty noise file path");
  } else {
    throw std::invalid_argument("unknown noise '" + name +
                                "' (white, pink or file:PATH)");
  }
  return source;
}

std::vector<std::pair<ClipKind, double>> ParseClipList(
    const std::vector<std::string>& items) {
  std::vector<std::pair<ClipKind, double>> clips;
  for (const std::string& item : items) {
    const CorruptionSpec spec = ParseCorruptionSpec("clip=" + item);
    clips.emplace_back(spec.clip->kind, spec.clip->threshold_fraction);
  }
  return clips;
}

ReportFormat ParseFormat(const std::string& name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "pretty") return ReportFormat::kPretty;
  if (name == "gnuplot") return ReportFormat::kGnuplot;
  throw std::invalid_argument("unknown format '" + name + "'");
}

int RunCochleagram(const GlobalOptions& global, const FrontendFlags& flags,
                   const std::string& in_path, const std::string& out_path,
                   bool as_image, bool pgm) {
  const FrontendConfig config = flags.Build(global);
  AudioClip clip = LoadWav(in_path);
  clip = Resample(clip, config.sample_rate);
  const GammatoneFilterbank fb = MakeFilterbank(config.Filterbank());
  const Cochleagram coch = ComputeCochleagram(fb, clip, config.FrameLen());

  Eigen::MatrixXd out_values;
  if (as_image) {
    out_values =
        ToFeatureImage(coch, config.image_h, config.image_w).values;
  } else {
    out_values = coch.values;
  }
  WriteCgrm(out_values, out_path);
  if (pgm) WritePgm(out_values, out_path + ".pgm");
  std::cout << (as_image ? "feature image: " : "cochleagram: ")
            << out_values.rows() << " x " << out_values.cols() << "\n";
  return 0;
}

int RunCorrupt(const GlobalOptions& global, const std::string& in_path,
               const std::string& out_path, const std::string& spec_text) {
  const CorruptionSpec spec = ParseCorruptionSpec(spec_text);
  const AudioClip clip = LoadWav(in_path);
  double measured_snr = 0.0;
  const AudioClip out = ApplyCorruption(clip, spec, global.seed, &measured_snr);
  if (spec.noise)
    std::fprintf(stderr, "measured SNR: %.6f dB\n", measured_snr);
  SaveWav(out, out_path);
  return 0;
}

int RunSynth(const GlobalOptions& global, const SynthConfig& config,
             const std::string& out_dir) {
  const DatasetManifest manifest =
      SynthSpeakerDataset(config, out_dir, global.seed);
  std::cout << "wrote " << manifest.entries.size() << " utterances for "
            << manifest.Speakers().size() << " speakers under " << out_dir
            << "\n";
  return 0;
}

int RunTrain(const GlobalOptions& global, const FrontendFlags& flags,
             const std::string& manifest_path, const std::string& model_path,
             const std::string& log_path, const std::string& adapt_noise,
             const std::vector<double>& adapt_snrs, bool no_clean,
             const TrainConfig& train_config,
             OptimizerState<float>& optimizer) {
  const FrontendConfig config = flags.Build(global);
  const DatasetManifest manifest = LoadManifest(manifest_path);

  AdaptationPlan plan;
  plan.include_clean = !no_clean;
  if (!adapt_noise.empty()) {
    plan.noise = ParseNoiseName(adapt_noise);
    plan.snrs = adapt_snrs;
  } else {
    plan.snrs.clear();  // clean-only model
  }

  LabeledImages set = BuildAdaptedTrainingSet(manifest, plan, config,
                                              global.seed);
  if (global.verbosity > 0)
    std::cerr << "training on " << set.images.size() << " images, "
              << set.n_classes << " speakers\n";

  SpeakerModel<float> model(set.n_classes, config.image_h, config.image_w,
                            global.seed);
  TrainConfig tc = train_config;
  tc.seed = global.seed;
  const std::vector<EpochStats> log = Train(model, set, tc, optimizer);
  if (global.verbosity > 0)
    for (const EpochStats& e : log)
      std::cerr << "epoch " << e.epoch << " loss " << e.loss << " acc "
                << e.train_accuracy << "\n";
  SaveModel(model, model_path);
  if (!log_path.empty()) WriteTrainLog(log, log_path);
  std::cout << "model written to " << model_path << "\n";
  return 0;
}

int RunEval(const GlobalOptions& global, const FrontendFlags& flags,
            const std::string& manifest_path, const std::string& model_path,
            const std::string& out_path, const std::string& mode,
            const std::vector<std::string>& noise_names,
            const std::vector<double>& snrs,
            const std::vector<double>& delays,
            const std::vector<std::string>& clip_items,
            const std::string& format_name) {
  const FrontendConfig config = flags.Build(global);
  const DatasetManifest manifest = LoadManifest(manifest_path);
  SpeakerModel<float> model = LoadModel(model_path);
  if (model.input_h() != config.image_h || model.input_w() != config.image_w)
    throw std::invalid_argument(
        "model expects " + std::to_string(model.input_h()) + "x" +
        std::to_string(model.input_w()) + " images, frontend produces " +
        std::to_string(config.image_h) + "x" + std::to_string(config.image_w));

  EvalGrid grid;
  grid.noises.clear();
  for (const std::string& name : noise_names)
    grid.noises.push_back(ParseNoiseName(name));
  if (!snrs.empty()) grid.snrs = snrs;
  if (!delays.empty()) grid.reverb_delays_ms = delays;
  if (!clip_items.empty()) grid.clip_specs = ParseClipList(clip_items);

  EvaluationReport report;
  if (mode == "noise") {
    report = EvaluateNoiseGrid(model, manifest, grid, config, global.seed,
                               global.threads);
  } else if (mode == "reverb") {
    report = EvaluateReverbGrid(model, manifest, grid, std::nullopt, config,
                                global.seed, global.threads);
  } else if (mode == "reverb-noisy") {
    if (grid.noises.empty())
      throw std::invalid_argument("reverb-noisy mode needs --noises");
    report = EvaluateReverbGrid(
        model, manifest, grid,
        std::make_pair(grid.noises.front(), grid.snrs), config, global.seed,
        global.threads);
  } else if (mode == "clip") {
    report = EvaluateClipping(model, manifest, grid, config, global.seed,
                              global.threads);
  } else {
    throw std::invalid_argument("unknown eval mode '" + mode + "'");
  }
  WriteReport(report, out_path, ParseFormat(format_name));
  std::cout << "report with " << report.cells.size() << " cells written to "
            << out_path << "\n";
  return 0;
}

int RunGradCheck(const GlobalOptions& global, int classes, int input_h,
                 int input_w) {
  SpeakerModel<double> model(classes, input_h, input_w, global.seed);
  std::mt19937_64 rng(DeriveSeed(global.seed, "gradcheck-data"));
  std::normal_distribution<double> gauss(0.0, 1.0);
  Tensor4<double> x(2, 1, input_h, input_w);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data[i] = 0.5 * gauss(rng);
  std::vector<int> labels = {0, classes - 1};

  GradCheckOptions options;
  options.seed = DeriveSeed(global.seed, "gradcheck-picks");
  options.max_params_per_group = 60;
  const GradCheckReport report = GradientCheck(model, x, labels, options);
  for (const auto& group : report.groups)
    std::printf("%-24s checked %4d  max rel err %.3e\n", group.name.c_str(),
                group.n_checked, group.max_rel_error);
  std::printf("overall max rel err %.3e (%s) -> %s\n", report.max_rel_error,
              report.worst_group.c_str(), report.pass ? "PASS" : "FAIL");

  // The checker must notice a sabotaged backward pass, otherwise its own
  // verdict means nothing.
  GradCheckOptions sabotage = options;
  sabotage.flip_sign_group = 16;  // block5 conv weights
  const bool control_failed =
      !GradientCheck(model, x, labels, sabotage).pass;
  if (!control_failed)
    std::printf("negative control: corrupted gradients were NOT detected\n");
  return report.pass && control_failed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOptions global;
  CLI::App app{
      "cochleagram speaker identification toolkit: corpus synthesis, "
      "corruption, feature extraction, training and evaluation"};
  app.require_subcommand(1);
  app.add_option("--seed", global.seed,
                 "Seed governing every stochastic stage");
  app.add_option("--sample-rate", global.sample_rate,
                 "Processing sample rate (Hz)");
  app.add_option("--threads", global.threads,
                 "Worker threads for evaluation grids");
  app.add_flag("-v,--verbose", global.verbosity, "More progress output");

  // cochleagram
  auto* coch = app.add_subcommand(
      "cochleagram", "Extract a cochleagram (or feature image) from a WAV");
  std::string coch_in, coch_out;
  bool coch_pgm = false, coch_image = false;
  FrontendFlags coch_flags;
  coch->add_option("input", coch_in, "Input WAV")->required();
  coch->add_option("output", coch_out, "Output CGRM file")->required();
  coch_flags.Register(coch);
  coch->add_flag("--as-image", coch_image,
                 "Emit the resized, normalized feature image instead of the "
                 "raw cochleagram");
  coch->add_flag("--pgm", coch_pgm, "Also write OUTPUT.pgm for inspection");

  // corrupt
  auto* corrupt =
      app.add_subcommand("corrupt", "Apply a corruption spec to a WAV");
  std::string corrupt_in, corrupt_out, corrupt_spec;
  corrupt->add_option("input", corrupt_in, "Input WAV")->required();
  corrupt->add_option("output", corrupt_out, "Output WAV")->required();
  corrupt
      ->add_option("--spec", corrupt_spec,
                   "e.g. noise=white@-5dB;reverb=200ms;clip=center:0.6")
      ->required();

  // synth
  auto* synth = app.add_subcommand(
      "synth", "Generate the synthetic speaker corpus plus manifest");
  SynthConfig synth_config;
  std::string synth_out;
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--speakers", synth_config.n_speakers, "Speaker count");
  synth->add_option("--utts", synth_config.utts_per_speaker,
                    "Utterances per speaker");
  synth->add_option("--seconds", synth_config.utt_seconds,
                    "Utterance length (s)");

  // train
  auto* train = app.add_subcommand(
      "train", "Train a speaker model from a manifest's train split");
  std::string train_manifest, train_model, train_log, train_adapt_noise;
  std::vector<double> train_adapt_snrs{-5.0};
  bool train_no_clean = false;
  TrainConfig train_config;
  OptimizerState<float> optimizer;
  FrontendFlags train_flags;
  train->add_option("--manifest", train_manifest, "Dataset manifest CSV")
      ->required();
  train->add_option("--model-out", train_model, "Output model file")
      ->required();
  train->add_option("--log", train_log, "Training log CSV");
  train->add_option("--adapt-noise", train_adapt_noise,
                    "Adaptation noise (white, pink or file:PATH); omit for "
                    "a noise-free model");
  train->add_option("--adapt-snrs", train_adapt_snrs,
                    "Adaptation SNRs in dB")
      ->delimiter(',');
  train->add_flag("--no-clean", train_no_clean,
                  "Drop the clean images from the training set");
  train->add_option("--epochs", train_config.epochs, "Training epochs");
  train->add_option("--batch", train_config.batch_size, "Minibatch size");
  train->add_option("--lr", optimizer.learning_rate, "Learning rate");
  train->add_option("--momentum", optimizer.momentum, "SGDM momentum");
  train->add_option("--l2", optimizer.l2_lambda, "L2 penalty");
  train_flags.Register(train);

  // eval
  auto* eval = app.add_subcommand(
      "eval", "Evaluate a model on a manifest's test split");
  std::string eval_manifest, eval_model, eval_out, eval_mode = "noise";
  std::string eval_format = "csv";
  std::vector<std::string> eval_noises{"white", "pink"};
  std::vector<double> eval_snrs, eval_delays;
  std::vector<std::string> eval_clips;
  FrontendFlags eval_flags;
  eval->add_option("--manifest", eval_manifest, "Dataset manifest CSV")
      ->required();
  eval->add_option("--model", eval_model, "Model file")->required();
  eval->add_option("--out", eval_out, "Report output path")->required();
  eval->add_option("--mode", eval_mode,
                   "noise | reverb | reverb-noisy | clip");
  eval->add_option("--noises", eval_noises, "Noise sources")->delimiter(',');
  eval->add_option("--snrs", eval_snrs, "SNRs in dB")->delimiter(',');
  eval->add_option("--delays", eval_delays, "Reverb delays in ms")
      ->delimiter(',');
  eval->add_option("--clips", eval_clips,
                   "Clip conditions like center:0.3,peak:0.9")
      ->delimiter(',');
  eval->add_option("--format", eval_format, "csv | pretty | gnuplot");
  eval_flags.Register(eval);

  // gradcheck
  auto* gradcheck = app.add_subcommand(
      "gradcheck",
      "Finite-difference check of every layer's backward pass (double "
      "precision)");
  int gc_classes = 8, gc_h = 64, gc_w = 64;
  gradcheck->add_option("--classes", gc_classes, "Class count");
  gradcheck->add_option("--height", gc_h, "Toy input height");
  gradcheck->add_option("--width", gc_w, "Toy input width");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (app.got_subcommand(coch))
      return RunCochleagram(global, coch_flags, coch_in, coch_out, coch_image,
                            coch_pgm);
    if (app.got_subcommand(corrupt))
      return RunCorrupt(global, corrupt_in, corrupt_out, corrupt_spec);
    if (app.got_subcommand(synth)) {
      synth_config.sample_rate = global.sample_rate;
      return RunSynth(global, synth_config, synth_out);
    }
    if (app.got_subcommand(train))
      return RunTrain(global, train_flags, train_manifest, train_model,
                      train_log, train_adapt_noise, train_adapt_snrs,
                      train_no_clean, train_config, optimizer);
    if (app.got_subcommand(eval))
      return RunEval(global, eval_flags, eval_manifest, eval_model, eval_out,
                     eval_mode, eval_noises, eval_snrs, eval_delays,
                     eval_clips, eval_format);
    if (app.got_subcommand(gradcheck))
      return RunGradCheck(global, gc_classes, gc_h, gc_w);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 3;
}
