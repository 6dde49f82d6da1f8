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

#include "rsgnn/similarity.h"

#include <algorithm>
#include <cmath>

namespace rsgnn {

RowDotEngine::RowDotEngine(const DenseMatrix& x)
    : x_(&x), transposed_(Transpose(x)), squared_norms_(x.rows()) {
  for (std::size_t i = 0; i < x.rows(); ++i)
    squared_norms_[i] = Dot(x.row(i), x.row(i));
}

void RowDotEngine::DotsWith(std::size_t i, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  const auto xi = x_->row(i);
  for (std::size_t f = 0; f < xi.size(); ++f) {
    const double v = xi[f];
    if (v == 0.0) continue;
    const auto column = transposed_.row(f);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += v * column[j];
  }
}

void CosineRow(const RowDotEngine& engine, std::size_t i,
               std::span<double> out) {
  engine.DotsWith(i, out);
  const auto norms = engine.squared_norms();
  const double ni = std::sqrt(norms[i]);
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double nj = std::sqrt(norms[j]);
    out[j] = (ni == 0.0 || nj == 0.0) ? 0.0 : out[j] / (ni * nj);
  }
}

}  // namespace rsgnn
