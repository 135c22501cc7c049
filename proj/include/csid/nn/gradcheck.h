// include/csid/nn/gradcheck.h

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

#ifndef CSID_NN_GRADCHECK_H_
#define CSID_NN_GRADCHECK_H_

#include <string>
#include <vector>

#include "csid/nn/model.h"

namespace csid {

struct GradCheckOptions {
  int max_params_per_group = 200;
  double step = 1e-5;
  double tolerance = 1e-4;
  uint64_t seed = 1;
  // When >= 0, the analytic gradient of that parameter group gets its sign
  // flipped before comparison. This is the checker's own negative control;
  // a healthy run must fail with it enabled.
  int flip_sign_group = -1;
};

struct GradCheckGroupResult {
  std::string name;
  int n_checked = 0;
  double max_rel_error = 0.0;
};

struct GradCheckReport {
  bool pass = false;
  double max_rel_error = 0.0;
  std::string worst_group;
  std::vector<GradCheckGroupResult> groups;
};

// Central finite differences against the analytic backward pass, sampling
// up to max_params_per_group entries of every parameter tensor. Runs the
// model in training mode so batch statistics are part of the checked
// function. Meant for double precision.
template <typename Scalar>
GradCheckReport GradientCheck(SpeakerModel<Scalar>& model,
                              const Tensor4<Scalar>& input,
                              const std::vector<int>& labels,
                              const GradCheckOptions& options = {}) {
  auto loss_only = [&]() -> double {
    const MatrixX<Scalar> logits = model.Forward(input, true);
    return double(
        SoftmaxCrossEntropy<Scalar>(logits, labels, nullptr, nullptr));
  };

  // Analytic pass.
  {
    const MatrixX<Scalar> logits = model.Forward(input, true);
    MatrixX<Scalar> grad_logits;
    SoftmaxCrossEntropy<Scalar>(logits, labels, nullptr, &grad_logits);
    model.Backward(grad_logits);
  }
  auto params = model.ParamGroups(false);
  std::vector<ArrayX<Scalar>> analytic;
  analytic.reserve(params.size());
  for (const auto& p : params) analytic.push_back(p.Grad());
  if (options.flip_sign_group >= 0 &&
      options.flip_sign_group < static_cast<int>(analytic.size()))
    analytic[static_cast<size_t>(options.flip_sign_group)] *= Scalar(-1);

  std::mt19937_64 rng(options.seed);
  GradCheckReport report;
  report.pass = true;
  for (size_t g = 0; g < params.size(); ++g) {
    auto value = params[g].Value();
    GradCheckGroupResult group;
    group.name = params[g].name;

    std::vector<Eigen::Index> picks;
    if (params[g].size <= options.max_params_per_group) {
      picks.resize(static_cast<size_t>(params[g].size));
      std::iota(picks.begin(), picks.end(), 0);
    } else {
      std::uniform_int_distribution<Eigen::Index> dist(0, params[g].size - 1);
      for (int i = 0; i < options.max_params_per_group; ++i)
        picks.push_back(dist(rng));
    }

    for (Eigen::Index idx : picks) {
      const Scalar saved = value[idx];
      value[idx] = saved + Scalar(options.step);
      const double up = loss_only();
      value[idx] = saved - Scalar(options.step);
      const double down = loss_only();
      value[idx] = saved;
      const double numeric = (up - down) / (2.0 * options.step);
      const double a = double(analytic[g][idx]);
      const double rel =
          std::abs(a - numeric) /
          std::max({std::abs(a), std::abs(numeric), 1e-4});
      group.max_rel_error = std::max(group.max_rel_error, rel);
      ++group.n_checked;
    }

    if (group.max_rel_error > report.max_rel_error) {
      report.max_rel_error = group.max_rel_error;
      report.worst_group = group.name;
    }
    if (group.max_rel_error >= options.tolerance) report.pass = false;
    report.groups.push_back(std::move(group));
  }
  return report;
}

}  // namespace csid

#endif  // CSID_NN_GRADCHECK_H_
