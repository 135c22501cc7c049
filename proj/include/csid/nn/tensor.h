// include/csid/nn/tensor.h

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

#ifndef CSID_NN_TENSOR_H_
#define CSID_NN_TENSOR_H_

#include <array>
#include <cassert>
#include <stdexcept>

#include <Eigen/Core>

namespace csid {

// Dense [batch, channels, height, width] activation tensor, row-major in
// that dimension order.
template <typename Scalar>
struct Tensor4 {
  std::array<Eigen::Index, 4> dims{0, 0, 0, 0};
  Eigen::Array<Scalar, Eigen::Dynamic, 1> data;

  Tensor4() = default;
  Tensor4(Eigen::Index n, Eigen::Index c, Eigen::Index h, Eigen::Index w) {
    Resize(n, c, h, w);
  }

  void Resize(Eigen::Index n, Eigen::Index c, Eigen::Index h,
              Eigen::Index w) {
    if (n < 1 || c < 1 || h < 1 || w < 1)
      throw std::invalid_argument("Tensor4: all dims must be >= 1");
    dims = {n, c, h, w};
    data.resize(n * c * h * w);
  }

  Eigen::Index batch() const { return dims[0]; }
  Eigen::Index channels() const { return dims[1]; }
  Eigen::Index height() const { return dims[2]; }
  Eigen::Index width() const { return dims[3]; }
  Eigen::Index size() const { return data.size(); }

  Eigen::Index Offset(Eigen::Index n, Eigen::Index c, Eigen::Index h,
                      Eigen::Index w) const {
    return ((n * dims[1] + c) * dims[2] + h) * dims[3] + w;
  }

  Scalar& operator()(Eigen::Index n, Eigen::Index c, Eigen::Index h,
                     Eigen::Index w) {
    return data[Offset(n, c, h, w)];
  }
  Scalar operator()(Eigen::Index n, Eigen::Index c, Eigen::Index h,
                    Eigen::Index w) const {
    return data[Offset(n, c, h, w)];
  }

  // Contiguous [c, h, w] slice of one batch item.
  Eigen::Map<Eigen::Array<Scalar, Eigen::Dynamic, 1>> Item(Eigen::Index n) {
    const Eigen::Index stride = dims[1] * dims[2] * dims[3];
    return {data.data() + n * stride, stride};
  }
  Eigen::Map<const Eigen::Array<Scalar, Eigen::Dynamic, 1>> Item(
      Eigen::Index n) const {
    const Eigen::Index stride = dims[1] * dims[2] * dims[3];
    return {data.data() + n * stride, stride};
  }

  void SetZero() { data.setZero(); }

  void DebugCheckFinite() const {
#ifndef NDEBUG
    assert(data.isFinite().all());
#endif
  }
};

}  // namespace csid

#endif  // CSID_NN_TENSOR_H_
