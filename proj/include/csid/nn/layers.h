// include/csid/nn/layers.h

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

#ifndef CSID_NN_LAYERS_H_
#define CSID_NN_LAYERS_H_

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "csid/nn/tensor.h"

namespace csid {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

// A flat, mutable view of one parameter tensor plus its gradient; the
// optimizer, the serializer and the gradient checker all walk these.
template <typename Scalar>
struct ParamGroup {
  std::string name;
  Scalar* value = nullptr;
  Scalar* grad = nullptr;
  Eigen::Index size = 0;
  bool weight_decay = false;

  Eigen::Map<ArrayX<Scalar>> Value() const { return {value, size}; }
  Eigen::Map<ArrayX<Scalar>> Grad() const { return {grad, size}; }
};

// Uniform Glorot draw: bound sqrt(6 / (fan_in + fan_out)), deterministic
// per seed. Biases are initialized to zero separately.
template <typename Scalar>
void GlorotFill(Eigen::Ref<MatrixX<Scalar>> w, Eigen::Index fan_in,
                Eigen::Index fan_out, uint64_t seed) {
  if (fan_in < 1 || fan_out < 1)
    throw std::invalid_argument("GlorotFill: fans must be >= 1");
  const double limit = std::sqrt(6.0 / double(fan_in + fan_out));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-limit, limit);
  for (Eigen::Index c = 0; c < w.cols(); ++c)
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      w(r, c) = static_cast<Scalar>(uniform(rng));
}

// 3x3 convolution, stride 1, same padding (one pad row and column on every
// side). Realized as per-item im2col plus a GEMM; the patch matrix is
// rebuilt in the backward pass instead of cached so memory stays bounded
// by one item.
template <typename Scalar>
class Conv2d {
 public:
  static constexpr Eigen::Index kKernel = 3;
  static constexpr Eigen::Index kPad = 1;

  Conv2d() = default;
  Conv2d(Eigen::Index in_ch, Eigen::Index out_ch, uint64_t seed)
      : in_ch_(in_ch), out_ch_(out_ch) {
    weights.resize(out_ch, in_ch * kKernel * kKernel);
    GlorotFill<Scalar>(weights, in_ch * kKernel * kKernel,
                       out_ch * kKernel * kKernel, seed);
    bias = VectorX<Scalar>::Zero(out_ch);
    grad_weights = MatrixX<Scalar>::Zero(weights.rows(), weights.cols());
    grad_bias = VectorX<Scalar>::Zero(out_ch);
  }

  Eigen::Index in_channels() const { return in_ch_; }
  Eigen::Index out_channels() const { return out_ch_; }

  using ColMatrix =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Tensor4<Scalar> Forward(const Tensor4<Scalar>& x) {
    if (x.channels() != in_ch_)
      throw std::invalid_argument("Conv2d: channel mismatch");
    x_cache_ = x;
    const Eigen::Index n = x.batch(), h = x.height(), w = x.width();
    Tensor4<Scalar> y(n, out_ch_, h, w);
    ColMatrix col;
    for (Eigen::Index item = 0; item < n; ++item) {
      Im2Col(x, item, col);
      Eigen::Map<MatrixX<Scalar>> out(y.data.data() + item * out_ch_ * h * w,
                                      h * w, out_ch_);
      // out is [positions x out_ch] so each output channel plane stays
      // contiguous in the row-major tensor.
      out.noalias() = col.transpose() * weights.transpose();
      out.rowwise() += bias.transpose();
    }
    y.DebugCheckFinite();
    return y;
  }

  Tensor4<Scalar> Backward(const Tensor4<Scalar>& grad_out) {
    const Tensor4<Scalar>& x = x_cache_;
    const Eigen::Index n = x.batch(), h = x.height(), w = x.width();
    grad_weights.setZero();
    grad_bias.setZero();
    Tensor4<Scalar> grad_x(n, in_ch_, h, w);
    grad_x.SetZero();
    ColMatrix col;
    MatrixX<Scalar> grad_col;
    for (Eigen::Index item = 0; item < n; ++item) {
      Im2Col(x, item, col);
      Eigen::Map<const MatrixX<Scalar>> gout(
          grad_out.data.data() + item * out_ch_ * h * w, h * w, out_ch_);
      grad_weights.noalias() += gout.transpose() * col.transpose();
      grad_bias.noalias() += gout.colwise().sum().transpose();
      grad_col.noalias() = weights.transpose() * gout.transpose();
      Col2Im(grad_col, grad_x, item);
    }
    return grad_x;
  }

  MatrixX<Scalar> weights;  // [out_ch x in_ch*9]
  VectorX<Scalar> bias;
  MatrixX<Scalar> grad_weights;
  VectorX<Scalar> grad_bias;

 private:
  // col is [in_ch*9 x h*w]; column p = (row-major position h*W + w) holds
  // the 3x3 patch around that position, zero outside the image.
  void Im2Col(const Tensor4<Scalar>& x, Eigen::Index item,
              ColMatrix& col) const {
    const Eigen::Index h = x.height(), w = x.width();
    col.setZero(in_ch_ * kKernel * kKernel, h * w);
    for (Eigen::Index c = 0; c < in_ch_; ++c) {
      for (Eigen::Index kh = 0; kh < kKernel; ++kh) {
        for (Eigen::Index kw = 0; kw < kKernel; ++kw) {
          const Eigen::Index row = (c * kKernel + kh) * kKernel + kw;
          for (Eigen::Index oh = 0; oh < h; ++oh) {
            const Eigen::Index ih = oh + kh - kPad;
            if (ih < 0 || ih >= h) continue;
            const Eigen::Index w_lo = std::max<Eigen::Index>(0, kPad - kw);
            const Eigen::Index w_hi =
                std::min<Eigen::Index>(w, w + kPad - kw);
            if (w_hi <= w_lo) continue;
            const Scalar* src =
                x.data.data() + x.Offset(item, c, ih, w_lo + kw - kPad);
            for (Eigen::Index ow = w_lo; ow < w_hi; ++ow)
              col(row, oh * w + ow) = src[ow - w_lo];
          }
        }
      }
    }
  }

  void Col2Im(const MatrixX<Scalar>& grad_col, Tensor4<Scalar>& grad_x,
              Eigen::Index item) const {
    const Eigen::Index h = grad_x.height(), w = grad_x.width();
    for (Eigen::Index c = 0; c < in_ch_; ++c) {
      for (Eigen::Index kh = 0; kh < kKernel; ++kh) {
        for (Eigen::Index kw = 0; kw < kKernel; ++kw) {
          const Eigen::Index row = (c * kKernel + kh) * kKernel + kw;
          for (Eigen::Index oh = 0; oh < h; ++oh) {
            const Eigen::Index ih = oh + kh - kPad;
            if (ih < 0 || ih >= h) continue;
            const Eigen::Index w_lo = std::max<Eigen::Index>(0, kPad - kw);
            const Eigen::Index w_hi =
                std::min<Eigen::Index>(w, w + kPad - kw);
            if (w_hi <= w_lo) continue;
            Scalar* dst =
                grad_x.data.data() + grad_x.Offset(item, c, ih, w_lo + kw - kPad);
            for (Eigen::Index ow = w_lo; ow < w_hi; ++ow)
              dst[ow - w_lo] += grad_col(row, oh * w + ow);
          }
        }
      }
    }
  }

  Eigen::Index in_ch_ = 0, out_ch_ = 0;
  Tensor4<Scalar> x_cache_;
};

// Per-channel batch normalization over (batch, height, width). Training
// normalizes by the biased batch statistics (epsilon 1e-5) and updates the
// running statistics with momentum 0.9; inference normalizes by the running
// statistics.
template <typename Scalar>
class BatchNorm {
 public:
  static constexpr double kEps = 1e-5;
  static constexpr double kMomentum = 0.9;

  BatchNorm() = default;
  explicit BatchNorm(Eigen::Index channels) : channels_(channels) {
    gamma = ArrayX<Scalar>::Ones(channels);
    beta = ArrayX<Scalar>::Zero(channels);
    running_mean = ArrayX<Scalar>::Zero(channels);
    running_var = ArrayX<Scalar>::Ones(channels);
    grad_gamma = ArrayX<Scalar>::Zero(channels);
    grad_beta = ArrayX<Scalar>::Zero(channels);
  }

  Tensor4<Scalar> Forward(const Tensor4<Scalar>& x, bool train) {
    if (x.channels() != channels_)
      throw std::invalid_argument("BatchNorm: channel mismatch");
    const Eigen::Index n = x.batch(), h = x.height(), w = x.width();
    const Eigen::Index m = n * h * w;  // samples per channel
    if (train && m < 2)
      throw std::invalid_argument(
          "BatchNorm: training needs >= 2 values per channel");

    Tensor4<Scalar> y(n, channels_, h, w);
    x_hat_.Resize(n, channels_, h, w);
    inv_std_.resize(channels_);
    m_ = m;
    for (Eigen::Index c = 0; c < channels_; ++c) {
      Scalar mean, var;
      if (train) {
        Scalar sum = 0, sq = 0;
        for (Eigen::Index item = 0; item < n; ++item) {
          const Scalar* p = x.data.data() + x.Offset(item, c, 0, 0);
          for (Eigen::Index i = 0; i < h * w; ++i) {
            sum += p[i];
            sq += p[i] * p[i];
          }
        }
        mean = sum / Scalar(m);
        var = sq / Scalar(m) - mean * mean;
        if (var < 0) var = 0;  // rounding guard
        running_mean[c] = Scalar(kMomentum) * running_mean[c] +
                          Scalar(1 - kMomentum) * mean;
        running_var[c] =
            Scalar(kMomentum) * running_var[c] + Scalar(1 - kMomentum) * var;
      } else {
        mean = running_mean[c];
        var = running_var[c];
      }
      const Scalar inv_std = Scalar(1) / std::sqrt(var + Scalar(kEps));
      inv_std_[c] = inv_std;
      for (Eigen::Index item = 0; item < n; ++item) {
        const Scalar* p = x.data.data() + x.Offset(item, c, 0, 0);
        Scalar* xh = x_hat_.data.data() + x_hat_.Offset(item, c, 0, 0);
        Scalar* out = y.data.data() + y.Offset(item, c, 0, 0);
        for (Eigen::Index i = 0; i < h * w; ++i) {
          xh[i] = (p[i] - mean) * inv_std;
          out[i] = gamma[c] * xh[i] + beta[c];
        }
      }
    }
    y.DebugCheckFinite();
    return y;
  }

  Tensor4<Scalar> Backward(const Tensor4<Scalar>& grad_out) {
    const Eigen::Index n = grad_out.batch(), h = grad_out.height(),
                       w = grad_out.width();
    Tensor4<Scalar> grad_x(n, channels_, h, w);
    for (Eigen::Index c = 0; c < channels_; ++c) {
      Scalar sum_dy = 0, sum_dy_xhat = 0;
      for (Eigen::Index item = 0; item < n; ++item) {
        const Scalar* dy = grad_out.data.data() + grad_out.Offset(item, c, 0, 0);
        const Scalar* xh = x_hat_.data.data() + x_hat_.Offset(item, c, 0, 0);
        for (Eigen::Index i = 0; i < h * w; ++i) {
          sum_dy += dy[i];
          sum_dy_xhat += dy[i] * xh[i];
        }
      }
      grad_gamma[c] = sum_dy_xhat;
      grad_beta[c] = sum_dy;
      const Scalar scale = gamma[c] * inv_std_[c] / Scalar(m_);
      for (Eigen::Index item = 0; item < n; ++item) {
        const Scalar* dy = grad_out.data.data() + grad_out.Offset(item, c, 0, 0);
        const Scalar* xh = x_hat_.data.data() + x_hat_.Offset(item, c, 0, 0);
        Scalar* dx = grad_x.data.data() + grad_x.Offset(item, c, 0, 0);
        for (Eigen::Index i = 0; i < h * w; ++i)
          dx[i] = scale * (Scalar(m_) * dy[i] - sum_dy - xh[i] * sum_dy_xhat);
      }
    }
    return grad_x;
  }

  Eigen::Index channels() const { return channels_; }

  ArrayX<Scalar> gamma, beta;
  ArrayX<Scalar> running_mean, running_var;
  ArrayX<Scalar> grad_gamma, grad_beta;

 private:
  Eigen::Index channels_ = 0;
  Eigen::Index m_ = 0;
  Tensor4<Scalar> x_hat_;
  ArrayX<Scalar> inv_std_;
};

// max(0, x); the gradient passes only where x > 0 (zero exactly at 0).
template <typename Scalar>
class Relu {
 public:
  Tensor4<Scalar> Forward(const Tensor4<Scalar>& x) {
    mask_ = (x.data > Scalar(0));
    Tensor4<Scalar> y = x;
    y.data = x.data.max(Scalar(0));
    return y;
  }

  Tensor4<Scalar> Backward(const Tensor4<Scalar>& grad_out) {
    Tensor4<Scalar> grad_x = grad_out;
    grad_x.data = mask_.select(grad_out.data, Scalar(0));
    return grad_x;
  }

 private:
  Eigen::Array<bool, Eigen::Dynamic, 1> mask_;
};

// 3x3 max pooling with stride 2, no padding. Output dims are
// floor((d - 3) / 2) + 1; the backward pass routes each gradient to the
// first (row-major) maximum in its window.
template <typename Scalar>
class MaxPool {
 public:
  static constexpr Eigen::Index kWindow = 3;
  static constexpr Eigen::Index kStride = 2;

  static Eigen::Index OutDim(Eigen::Index d) {
    return (d - kWindow) / kStride + 1;
  }

  Tensor4<Scalar> Forward(const Tensor4<Scalar>& x) {
    if (x.height() < kWindow || x.width() < kWindow)
      throw std::invalid_argument("MaxPool: spatial dims below window size");
    in_dims_ = x.dims;
    const Eigen::Index n = x.batch(), c = x.channels();
    const Eigen::Index oh = OutDim(x.height()), ow = OutDim(x.width());
    Tensor4<Scalar> y(n, c, oh, ow);
    argmax_.resize(y.size());
    Eigen::Index out_i = 0;
    for (Eigen::Index item = 0; item < n; ++item) {
      for (Eigen::Index ch = 0; ch < c; ++ch) {
        for (Eigen::Index r = 0; r < oh; ++r) {
          for (Eigen::Index col = 0; col < ow; ++col, ++out_i) {
            const Eigen::Index r0 = r * kStride, c0 = col * kStride;
            Scalar best = x(item, ch, r0, c0);
            Eigen::Index best_at = x.Offset(item, ch, r0, c0);
            for (Eigen::Index dr = 0; dr < kWindow; ++dr)
              for (Eigen::Index dc = 0; dc < kWindow; ++dc) {
                const Scalar v = x(item, ch, r0 + dr, c0 + dc);
                if (v > best) {
                  best = v;
                  best_at = x.Offset(item, ch, r0 + dr, c0 + dc);
                }
              }
            y.data[out_i] = best;
            argmax_[out_i] = best_at;
          }
        }
      }
    }
    return y;
  }

  Tensor4<Scalar> Backward(const Tensor4<Scalar>& grad_out) {
    Tensor4<Scalar> grad_x(in_dims_[0], in_dims_[1], in_dims_[2], in_dims_[3]);
    grad_x.SetZero();
    for (Eigen::Index i = 0; i < grad_out.size(); ++i)
      grad_x.data[argmax_[i]] += grad_out.data[i];
    return grad_x;
  }

 private:
  std::array<Eigen::Index, 4> in_dims_{0, 0, 0, 0};
  std::vector<Eigen::Index> argmax_;
};

// Output layer: flattens [c, h, w], applies an affine map to n_classes
// logits.
template <typename Scalar>
class Dense {
 public:
  Dense() = default;
  Dense(Eigen::Index in_features, Eigen::Index n_classes, uint64_t seed)
      : in_features_(in_features) {
    weights.resize(n_classes, in_features);
    GlorotFill<Scalar>(weights, in_features, n_classes, seed);
    bias = VectorX<Scalar>::Zero(n_classes);
    grad_weights = MatrixX<Scalar>::Zero(n_classes, in_features);
    grad_bias = VectorX<Scalar>::Zero(n_classes);
  }

  // x: [features x batch] column per item; returns logits [classes x batch].
  MatrixX<Scalar> Forward(const MatrixX<Scalar>& x) {
    if (x.rows() != in_features_)
      throw std::invalid_argument("Dense: feature size mismatch");
    x_cache_ = x;
    MatrixX<Scalar> logits = weights * x;
    logits.colwise() += bias;
    return logits;
  }

  MatrixX<Scalar> Backward(const MatrixX<Scalar>& grad_logits) {
    grad_weights.noalias() = grad_logits * x_cache_.transpose();
    grad_bias = grad_logits.rowwise().sum();
    return weights.transpose() * grad_logits;
  }

  Eigen::Index in_features() const { return in_features_; }
  Eigen::Index n_classes() const { return weights.rows(); }

  MatrixX<Scalar> weights;  // [classes x features]
  VectorX<Scalar> bias;
  MatrixX<Scalar> grad_weights;
  VectorX<Scalar> grad_bias;

 private:
  Eigen::Index in_features_ = 0;
  MatrixX<Scalar> x_cache_;
};

// Numerically stable softmax over each column.
template <typename Scalar>
MatrixX<Scalar> Softmax(const MatrixX<Scalar>& logits) {
  MatrixX<Scalar> p(logits.rows(), logits.cols());
  for (Eigen::Index j = 0; j < logits.cols(); ++j) {
    const Scalar peak = logits.col(j).maxCoeff();
    ArrayX<Scalar> e = (logits.col(j).array() - peak).exp();
    p.col(j) = (e / e.sum()).matrix();
  }
  return p;
}

// Mean cross-entropy of softmax(logits) against the labels; also emits the
// probabilities and the exact logit gradient (probs - onehot) / batch.
template <typename Scalar>
Scalar SoftmaxCrossEntropy(const MatrixX<Scalar>& logits,
                           const std::vector<int>& labels,
                           MatrixX<Scalar>* probs,
                           MatrixX<Scalar>* grad_logits) {
  const Eigen::Index batch = logits.cols();
  if (static_cast<Eigen::Index>(labels.size()) != batch)
    throw std::invalid_argument("SoftmaxCrossEntropy: label count mismatch");
  Scalar loss = 0;
  MatrixX<Scalar> p(logits.rows(), logits.cols());
  for (Eigen::Index j = 0; j < batch; ++j) {
    if (labels[j] < 0 || labels[j] >= logits.rows())
      throw std::invalid_argument("SoftmaxCrossEntropy: label out of range");
    const Scalar peak = logits.col(j).maxCoeff();
    const ArrayX<Scalar> shifted = logits.col(j).array() - peak;
    const Scalar lse = std::log(shifted.exp().sum());
    p.col(j) = (shifted - lse).exp().matrix();
    loss -= shifted[labels[j]] - lse;
  }
  loss /= Scalar(batch);
  if (grad_logits) {
    *grad_logits = p / Scalar(batch);
    for (Eigen::Index j = 0; j < batch; ++j)
      (*grad_logits)(labels[j], j) -= Scalar(1) / Scalar(batch);
  }
  if (probs) *probs = std::move(p);
  return loss;
}

// One SGDM update over a parameter set:
//   v <- momentum * v - lr * (g + l2 * p);  p <- p + v
// Weight decay applies only to groups flagged for it (convolution and dense
// weights and biases, not batch-norm affine parameters).
template <typename Scalar>
struct OptimizerState {
  double learning_rate = 1e-3;
  double momentum = 0.9;
  double l2_lambda = 1e-4;
  std::vector<ArrayX<Scalar>> velocity;  // aligned with the param groups

  void Validate() const {
    if (learning_rate <= 0)
      throw std::invalid_argument("OptimizerState: learning_rate must be > 0");
    if (momentum < 0 || momentum >= 1)
      throw std::invalid_argument("OptimizerState: momentum must be in [0,1)");
    if (l2_lambda < 0)
      throw std::invalid_argument("OptimizerState: l2_lambda must be >= 0");
  }
};

template <typename Scalar>
void SgdmStep(const std::vector<ParamGroup<Scalar>>& params,
              OptimizerState<Scalar>& state) {
  state.Validate();
  if (state.velocity.empty()) {
    state.velocity.reserve(params.size());
    for (const auto& p : params)
      state.velocity.push_back(ArrayX<Scalar>::Zero(p.size));
  }
  if (state.velocity.size() != params.size())
    throw std::invalid_argument("SgdmStep: velocity/param group mismatch");
  for (size_t i = 0; i < params.size(); ++i) {
    const auto& p = params[i];
    if (state.velocity[i].size() != p.size)
      throw std::invalid_argument("SgdmStep: shape mismatch");
    ArrayX<Scalar>& v = state.velocity[i];
    Eigen::Map<ArrayX<Scalar>> value = p.Value();
    Eigen::Map<ArrayX<Scalar>> grad = p.Grad();
    const Scalar l2 =
        p.weight_decay ? Scalar(state.l2_lambda) : Scalar(0);
    v = Scalar(state.momentum) * v -
        Scalar(state.learning_rate) * (grad + l2 * value);
    value += v;
  }
}

}  // namespace csid

#endif  // CSID_NN_LAYERS_H_
