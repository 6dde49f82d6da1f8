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

#ifndef RSGNN_SPARSE_MATRIX_H_
#define RSGNN_SPARSE_MATRIX_H_

#include <cstddef>
#include <span>
#include <vector>

#include "rsgnn/dense_matrix.h"

namespace rsgnn {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

// Compressed sparse rows with strictly increasing column indices per row.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  CsrMatrix(std::size_t rows, std::size_t cols,
            std::vector<std::size_t> row_ptr, std::vector<std::size_t> col_idx,
            std::vector<double> values);

  // Duplicate coordinates are an error; order of the input is irrelevant.
  static CsrMatrix FromTriplets(std::size_t rows, std::size_t cols,
                                std::vector<Triplet> triplets);
  // Keeps the nonzero entries of `dense`.
  static CsrMatrix FromDense(const DenseMatrix& dense);
  static CsrMatrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const std::size_t> RowColumns(std::size_t r) const {
    return {col_idx_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }
  std::span<const double> RowValues(std::size_t r) const {
    return {values_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }
  std::span<double> MutableRowValues(std::size_t r) {
    return {values_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }

  // Value at (r, c), zero when not stored. Binary search within the row.
  double At(std::size_t r, std::size_t c) const;
  bool Contains(std::size_t r, std::size_t c) const;

  DenseMatrix ToDense() const;
  bool IsSymmetric() const;

  bool operator==(const CsrMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

// s * d. Each output row accumulates in ascending column order.
DenseMatrix Spmm(const CsrMatrix& s, const DenseMatrix& d);
// transpose(s) * d.
DenseMatrix SpmmTransA(const CsrMatrix& s, const DenseMatrix& d);

// A dense operand with an optional compressed copy for products, used for
// bag-of-words style feature matrices where most entries are zero.
class FeatureOperand {
 public:
  static constexpr double kSparseDensity = 0.25;

  explicit FeatureOperand(const DenseMatrix& x);

  const DenseMatrix& dense() const { return *dense_; }
  bool uses_sparse() const { return use_sparse_; }

  // x * w
  DenseMatrix Times(const DenseMatrix& w) const;
  // transpose(x) * g
  DenseMatrix TransposeTimes(const DenseMatrix& g) const;

 private:
  const DenseMatrix* dense_;
  bool use_sparse_ = false;
  CsrMatrix sparse_;
};

}  // namespace rsgnn

#endif  // RSGNN_SPARSE_MATRIX_H_
