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

#ifndef RSGNN_ACTIVATIONS_H_
#define RSGNN_ACTIVATIONS_H_

#include <cmath>
#include <span>

#include "rsgnn/dense_matrix.h"

namespace rsgnn {

inline constexpr double kSeluAlpha = 1.6732632423543772;
inline constexpr double kSeluScale = 1.0507009873554805;

inline double Selu(double x) {
  return x > 0.0 ? kSeluScale * x : kSeluScale * kSeluAlpha * std::expm1(x);
}

inline double SeluDerivative(double x) {
  return x > 0.0 ? kSeluScale : kSeluScale * kSeluAlpha * std::exp(x);
}

inline double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline double Prelu(double x, double slope) { return x > 0.0 ? x : slope * x; }

DenseMatrix Selu(const DenseMatrix& x);
DenseMatrix Sigmoid(const DenseMatrix& x);
// One learnable slope per column.
DenseMatrix Prelu(const DenseMatrix& x, std::span<const double> slope);

}  // namespace rsgnn

#endif  // RSGNN_ACTIVATIONS_H_
