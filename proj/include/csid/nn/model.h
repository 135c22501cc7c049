// include/csid/nn/model.h

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

#ifndef CSID_NN_MODEL_H_
#define CSID_NN_MODEL_H_

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "csid/nn/layers.h"
#include "csid/seed.h"

namespace csid {

// Classifier input set: normalized images with dense class labels.
struct LabeledImages {
  std::vector<Eigen::MatrixXd> images;
  std::vector<int> labels;
  int n_classes = 0;
};

// conv(3x3, same) -> batch norm -> ReLU -> max pool(3x3, stride 2).
template <typename Scalar>
struct ConvBlock {
  Conv2d<Scalar> conv;
  BatchNorm<Scalar> bn;
  Relu<Scalar> relu;
  MaxPool<Scalar> pool;

  Tensor4<Scalar> Forward(const Tensor4<Scalar>& x, bool train) {
    return pool.Forward(relu.Forward(bn.Forward(conv.Forward(x), train)));
  }
  Tensor4<Scalar> Backward(const Tensor4<Scalar>& g) {
    return conv.Backward(bn.Backward(relu.Backward(pool.Backward(g))));
  }
};

// Five conv blocks with kernel counts [8, 8, 16, 32, 32] on a single-channel
// input, followed by a dense layer emitting one logit per speaker.
template <typename Scalar>
class SpeakerModel {
 public:
  static constexpr std::array<Eigen::Index, 5> kKernels{8, 8, 16, 32, 32};

  SpeakerModel() = default;

  SpeakerModel(int n_speakers, Eigen::Index input_h, Eigen::Index input_w,
               uint64_t seed)
      : n_speakers_(n_speakers), input_h_(input_h), input_w_(input_w) {
    if (n_speakers < 2)
      throw std::invalid_argument("SpeakerModel: need at least 2 speakers");
    Eigen::Index h = input_h, w = input_w, in_ch = 1;
    for (size_t b = 0; b < kKernels.size(); ++b) {
      if (h < MaxPool<Scalar>::kWindow || w < MaxPool<Scalar>::kWindow)
        throw std::invalid_argument(
            "SpeakerModel: input too small, pooling stage " +
            std::to_string(b + 1) + " sees " + std::to_string(h) + "x" +
            std::to_string(w));
      blocks_[b].conv = Conv2d<Scalar>(
          in_ch, kKernels[b],
          DeriveSeed(seed, "conv" + std::to_string(b)));
      blocks_[b].bn = BatchNorm<Scalar>(kKernels[b]);
      in_ch = kKernels[b];
      h = MaxPool<Scalar>::OutDim(h);
      w = MaxPool<Scalar>::OutDim(w);
    }
    feature_h_ = h;
    feature_w_ = w;
    dense_ = Dense<Scalar>(h * w * kKernels.back(), n_speakers,
                           DeriveSeed(seed, "dense"));
  }

  int n_speakers() const { return n_speakers_; }
  Eigen::Index input_h() const { return input_h_; }
  Eigen::Index input_w() const { return input_w_; }
  Eigen::Index feature_h() const { return feature_h_; }
  Eigen::Index feature_w() const { return feature_w_; }
  Dense<Scalar>& dense() { return dense_; }
  ConvBlock<Scalar>& block(size_t i) { return blocks_[i]; }
  const ConvBlock<Scalar>& block(size_t i) const { return blocks_[i]; }

  // Logits [n_speakers x batch]. Also exposes the pre-dense activation
  // shape through feature_h/feature_w.
  MatrixX<Scalar> Forward(const Tensor4<Scalar>& x, bool train) {
    if (x.channels() != 1 || x.height() != input_h_ || x.width() != input_w_)
      throw std::invalid_argument("SpeakerModel: input dims mismatch");
    Tensor4<Scalar> a = x;
    for (auto& block : blocks_) a = block.Forward(a, train);
    // The [c, h, w] slice of each item is already flat in memory.
    MatrixX<Scalar> features(dense_.in_features(), a.batch());
    for (Eigen::Index item = 0; item < a.batch(); ++item)
      features.col(item) = a.Item(item).matrix();
    batch_ = a.batch();
    return dense_.Forward(features);
  }

  void Backward(const MatrixX<Scalar>& grad_logits) {
    const MatrixX<Scalar> grad_features = dense_.Backward(grad_logits);
    Tensor4<Scalar> g(batch_, kKernels.back(), feature_h_, feature_w_);
    for (Eigen::Index item = 0; item < batch_; ++item)
      g.Item(item) = grad_features.col(item).array();
    for (size_t b = blocks_.size(); b > 0; --b)
      g = blocks_[b - 1].Backward(g);
  }

  // Trainable tensors plus running statistics, in declaration order. The
  // serializer and the optimizer both rely on this order being stable.
  std::vector<ParamGroup<Scalar>> ParamGroups(bool include_running_stats) {
    std::vector<ParamGroup<Scalar>> groups;
    for (size_t b = 0; b < blocks_.size(); ++b) {
      const std::string tag = "block" + std::to_string(b + 1);
      auto& conv = blocks_[b].conv;
      auto& bn = blocks_[b].bn;
      groups.push_back({tag + ".conv.weights", conv.weights.data(),
                        conv.grad_weights.data(), conv.weights.size(), true});
      groups.push_back({tag + ".conv.bias", conv.bias.data(),
                        conv.grad_bias.data(), conv.bias.size(), true});
      groups.push_back({tag + ".bn.gamma", bn.gamma.data(),
                        bn.grad_gamma.data(), bn.gamma.size(), false});
      groups.push_back({tag + ".bn.beta", bn.beta.data(), bn.grad_beta.data(),
                        bn.beta.size(), false});
      if (include_running_stats) {
        groups.push_back({tag + ".bn.running_mean", bn.running_mean.data(),
                          nullptr, bn.running_mean.size(), false});
        groups.push_back({tag + ".bn.running_var", bn.running_var.data(),
                          nullptr, bn.running_var.size(), false});
      }
    }
    groups.push_back({"dense.weights", dense_.weights.data(),
                      dense_.grad_weights.data(), dense_.weights.size(),
                      true});
    groups.push_back({"dense.bias", dense_.bias.data(),
                      dense_.grad_bias.data(), dense_.bias.size(), true});
    return groups;
  }

 private:
  int n_speakers_ = 0;
  Eigen::Index input_h_ = 0, input_w_ = 0;
  Eigen::Index feature_h_ = 0, feature_w_ = 0;
  Eigen::Index batch_ = 0;
  std::array<ConvBlock<Scalar>, 5> blocks_;
  Dense<Scalar> dense_;
};

template <typename Scalar>
Tensor4<Scalar> ImagesToBatch(const LabeledImages& set,
                              const std::vector<int>& indices) {
  if (indices.empty()) throw std::invalid_argument("ImagesToBatch: empty");
  const Eigen::Index h = set.images[0].rows(), w = set.images[0].cols();
  Tensor4<Scalar> x(static_cast<Eigen::Index>(indices.size()), 1, h, w);
  for (size_t i = 0; i < indices.size(); ++i) {
    const Eigen::MatrixXd& img = set.images[static_cast<size_t>(indices[i])];
    if (img.rows() != h || img.cols() != w)
      throw std::invalid_argument("ImagesToBatch: inconsistent image dims");
    for (Eigen::Index r = 0; r < h; ++r)
      for (Eigen::Index c = 0; c < w; ++c)
        x(static_cast<Eigen::Index>(i), 0, r, c) =
            static_cast<Scalar>(img(r, c));
  }
  return x;
}

struct TrainConfig {
  int epochs = 30;
  int batch_size = 64;
  uint64_t seed = 0;
};

struct EpochStats {
  int epoch = 0;
  double loss = 0.0;
  double train_accuracy = 0.0;  // fraction in [0, 1]
};

// Mini-batch SGDM over a seeded shuffle per epoch; the final partial batch
// is kept. Single-threaded and bit-deterministic for a fixed seed.
template <typename Scalar>
std::vector<EpochStats> Train(SpeakerModel<Scalar>& model,
                              const LabeledImages& set,
                              const TrainConfig& config,
                              OptimizerState<Scalar>& optimizer) {
  if (set.images.empty()) throw std::invalid_argument("Train: empty dataset");
  if (set.images.size() != set.labels.size())
    throw std::invalid_argument("Train: image/label count mismatch");
  if (set.n_classes < 2 || set.n_classes > model.n_speakers())
    throw std::invalid_argument("Train: bad class count");
  if (config.batch_size < 1 || config.epochs < 0)
    throw std::invalid_argument("Train: bad config");

  auto params = model.ParamGroups(false);
  std::vector<int> order(set.images.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(DeriveSeed(config.seed, "shuffle"));

  std::vector<EpochStats> log;
  log.reserve(static_cast<size_t>(config.epochs));
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    Eigen::Index n_correct = 0;
    for (size_t start = 0; start < order.size();
         start += static_cast<size_t>(config.batch_size)) {
      const size_t stop =
          std::min(order.size(), start + static_cast<size_t>(config.batch_size));
      const std::vector<int> batch_idx(order.begin() + start,
                                       order.begin() + stop);
      std::vector<int> batch_labels(batch_idx.size());
      for (size_t i = 0; i < batch_idx.size(); ++i)
        batch_labels[i] = set.labels[static_cast<size_t>(batch_idx[i])];

      const Tensor4<Scalar> x = ImagesToBatch<Scalar>(set, batch_idx);
      const MatrixX<Scalar> logits = model.Forward(x, true);
      MatrixX<Scalar> probs, grad_logits;
      const Scalar loss =
          SoftmaxCrossEntropy(logits, batch_labels, &probs, &grad_logits);
      model.Backward(grad_logits);
      SgdmStep(params, optimizer);

      loss_sum += double(loss) * double(batch_idx.size());
      for (Eigen::Index j = 0; j < logits.cols(); ++j) {
        Eigen::Index argmax;
        logits.col(j).maxCoeff(&argmax);
        n_correct += (argmax == batch_labels[static_cast<size_t>(j)]);
      }
    }
    EpochStats stats;
    stats.epoch = epoch;
    stats.loss = loss_sum / double(order.size());
    stats.train_accuracy = double(n_correct) / double(order.size());
    log.push_back(stats);
  }
  return log;
}

struct Prediction {
  int speaker = 0;
  Eigen::VectorXd probabilities;
};

// Inference on one image; batch statistics come from the running averages.
template <typename Scalar>
Prediction Predict(SpeakerModel<Scalar>& model, const Eigen::MatrixXd& image) {
  if (image.rows() != model.input_h() || image.cols() != model.input_w())
    throw std::invalid_argument("Predict: image dims mismatch");
  Tensor4<Scalar> x(1, 1, image.rows(), image.cols());
  for (Eigen::Index r = 0; r < image.rows(); ++r)
    for (Eigen::Index c = 0; c < image.cols(); ++c)
      x(0, 0, r, c) = static_cast<Scalar>(image(r, c));
  const MatrixX<Scalar> logits = model.Forward(x, false);
  const MatrixX<Scalar> probs = Softmax(logits);
  Prediction pred;
  Eigen::Index argmax;
  logits.col(0).maxCoeff(&argmax);
  pred.speaker = static_cast<int>(argmax);
  pred.probabilities = probs.col(0).template cast<double>();
  return pred;
}

}  // namespace csid

#endif  // CSID_NN_MODEL_H_
