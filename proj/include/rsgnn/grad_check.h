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

#ifndef RSGNN_GRAD_CHECK_H_
#define RSGNN_GRAD_CHECK_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rsgnn/dense_matrix.h"

namespace rsgnn {

// |a - n| / max(1, |a|, |n|)
double RelativeError(double analytic, double numeric);

struct GradCheckBlock {
  std::string name;
  double max_relative_error = 0.0;
  std::size_t worst_index = 0;
};

struct GradCheckReport {
  std::vector<GradCheckBlock> blocks;

  double MaxRelativeError() const;
  bool Passed(double tolerance) const { return MaxRelativeError() < tolerance; }
};

using ScalarLoss = std::function<double(std::span<const DenseMatrix>)>;

// Central differences (f(p + eps) - f(p - eps)) / 2 eps for every entry of
// every block, compared against `analytic`. `loss` must be deterministic.
GradCheckReport GradCheck(const ScalarLoss& loss,
                          std::vector<DenseMatrix> params,
                          std::span<const DenseMatrix> analytic,
                          std::span<const std::string> names,
                          double epsilon = 1e-6);

}  // namespace rsgnn

#endif  // RSGNN_GRAD_CHECK_H_
