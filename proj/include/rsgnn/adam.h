// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RSGNN_ADAM_H_
#define RSGNN_ADAM_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rsgnn/dense_matrix.h"

namespace rsgnn {

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct OptimizerState {
  AdamOptions options;
  std::vector<DenseMatrix> first_moment;
  std::vector<DenseMatrix> second_moment;
  std::int64_t step = 0;
};

struct ParamBlock {
  std::string name;
  DenseMatrix* value;
  const DenseMatrix* grad;
};

// Zero accumulators shaped like `params`.
OptimizerState MakeOptimizerState(const AdamOptions& options,
                                  std::span<const ParamBlock> params);

// Bias-corrected Adam update applied in place. All gradients are checked
// for finiteness before any parameter is touched; the offending block is
// named in the NumericError.
void AdamStep(std::span<const ParamBlock> params, OptimizerState& state);

}  // namespace rsgnn

#endif  // RSGNN_ADAM_H_
