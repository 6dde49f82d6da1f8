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

#ifndef RSGNN_SIMILARITY_H_
#define RSGNN_SIMILARITY_H_

#include <cstddef>
#include <span>
#include <vector>

#include "rsgnn/dense_matrix.h"

namespace rsgnn {

// Computes one row of the Gram matrix X X^T at a time, skipping zero
// features, so that m x m similarities never need to be stored.
class RowDotEngine {
 public:
  explicit RowDotEngine(const DenseMatrix& x);

  std::size_t num_rows() const { return x_->rows(); }
  // out[j] = <x_i, x_j> for every row j.
  void DotsWith(std::size_t i, std::span<double> out) const;
  std::span<const double> squared_norms() const { return squared_norms_; }

 private:
  const DenseMatrix* x_;
  DenseMatrix transposed_;
  std::vector<double> squared_norms_;
};

// Cosine similarities of row i against all rows; rows of zero norm have
// similarity 0 to every row, including themselves.
void CosineRow(const RowDotEngine& engine, std::size_t i, std::span<double> out);

}  // namespace rsgnn

#endif  // RSGNN_SIMILARITY_H_
