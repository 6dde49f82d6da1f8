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

#include "rsgnn/activations.h"

#include "rsgnn/error.h"

namespace rsgnn {

DenseMatrix Selu(const DenseMatrix& x) {
  DenseMatrix out = x;
  for (double& v : out.values()) v = Selu(v);
  return out;
}

DenseMatrix Sigmoid(const DenseMatrix& x) {
  DenseMatrix out = x;
  for (double& v : out.values()) v = Sigmoid(v);
  return out;
}

DenseMatrix Prelu(const DenseMatrix& x, std::span<const double> slope) {
  Require(slope.size() == x.cols(), "Prelu: one slope per column required");
  DenseMatrix out = x;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto row = out.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = Prelu(row[j], slope[j]);
  }
  return out;
}

}  // namespace rsgnn
