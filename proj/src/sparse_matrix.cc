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

#include "rsgnn/sparse_matrix.h"

#include <algorithm>
#include <string>

#include "rsgnn/error.h"

namespace rsgnn {

CsrMatrix::CsrMatrix(std::size_t rows, std::size_t cols,
                     std::vector<std::size_t> row_ptr,
                     std::vector<std::size_t> col_idx,
                     std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  Require(row_ptr_.size() == rows_ + 1, "CsrMatrix: row_ptr length");
  Require(row_ptr_.front() == 0 && row_ptr_.back() == col_idx_.size(),
          "CsrMatrix: row_ptr bounds");
  Require(col_idx_.size() == values_.size(), "CsrMatrix: nnz mismatch");
  for (std::size_t r = 0; r < rows_; ++r) {
    Require(row_ptr_[r] <= row_ptr_[r + 1], "CsrMatrix: row_ptr not monotone");
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      Require(col_idx_[p] < cols_, "CsrMatrix: column index out of range");
      Require(p == row_ptr_[r] || col_idx_[p - 1] < col_idx_[p],
              "CsrMatrix: columns not strictly increasing in row " +
                  std::to_string(r));
    }
  }
}

CsrMatrix CsrMatrix::FromTriplets(std::size_t rows, std::size_t cols,
                                  std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  std::vector<std::size_t> row_ptr(rows + 1, 0);
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  col_idx.reserve(triplets.size());
  values.reserve(triplets.size());
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const Triplet& t = triplets[i];
    Require(t.row < rows && t.col < cols,
            "CsrMatrix::FromTriplets: coordinate out of range");
    Require(i == 0 || t.row != triplets[i - 1].row ||
                t.col != triplets[i - 1].col,
            "CsrMatrix::FromTriplets: duplicate coordinate");
    ++row_ptr[t.row + 1];
    col_idx.push_back(t.col);
    values.push_back(t.value);
  }
  for (std::size_t r = 0; r < rows; ++r) row_ptr[r + 1] += row_ptr[r];
  return CsrMatrix(rows, cols, std::move(row_ptr), std::move(col_idx),
                   std::move(values));
}

CsrMatrix CsrMatrix::FromDense(const DenseMatrix& dense) {
  std::vector<std::size_t> row_ptr(dense.rows() + 1, 0);
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  for (std::size_t r = 0; r < dense.rows(); ++r) {
    const auto row = dense.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0.0) {
        col_idx.push_back(c);
        values.push_back(row[c]);
      }
    }
    row_ptr[r + 1] = col_idx.size();
  }
  return CsrMatrix(dense.rows(), dense.cols(), std::move(row_ptr),
                   std::move(col_idx), std::move(values));
}

CsrMatrix CsrMatrix::Identity(std::size_t n) {
  std::vector<std::size_t> row_ptr(n + 1);
  std::vector<std::size_t> col_idx(n);
  for (std::size_t i = 0; i <= n; ++i) row_ptr[i] = i;
  for (std::size_t i = 0; i < n; ++i) col_idx[i] = i;
  return CsrMatrix(n, n, std::move(row_ptr), std::move(col_idx),
                   std::vector<double>(n, 1.0));
}

double CsrMatrix::At(std::size_t r, std::size_t c) const {
  const auto cols = RowColumns(r);
  const auto it = std::lower_bound(cols.begin(), cols.end(), c);
  if (it == cols.end() || *it != c) return 0.0;
  return values_[row_ptr_[r] + static_cast<std::size_t>(it - cols.begin())];
}

bool CsrMatrix::Contains(std::size_t r, std::size_t c) const {
  const auto cols = RowColumns(r);
  return std::binary_search(cols.begin(), cols.end(), c);
}

DenseMatrix CsrMatrix::ToDense() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto cols = RowColumns(r);
    const auto vals = RowValues(r);
    for (std::size_t p = 0; p < cols.size(); ++p) d(r, cols[p]) = vals[p];
  }
  return d;
}

bool CsrMatrix::IsSymmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto cols = RowColumns(r);
    const auto vals = RowValues(r);
    for (std::size_t p = 0; p < cols.size(); ++p) {
      if (!Contains(cols[p], r) || At(cols[p], r) != vals[p]) return false;
    }
  }
  return true;
}

DenseMatrix Spmm(const CsrMatrix& s, const DenseMatrix& d) {
  Require(s.cols() == d.rows(),
          "Spmm: sparse is " + std::to_string(s.rows()) + "x" +
              std::to_string(s.cols()) + " but dense has " +
              std::to_string(d.rows()) + " rows");
  DenseMatrix out(s.rows(), d.cols());
  for (std::size_t r = 0; r < s.rows(); ++r) {
    const auto cols = s.RowColumns(r);
    const auto vals = s.RowValues(r);
    auto out_row = out.row(r);
    for (std::size_t p = 0; p < cols.size(); ++p) {
      const double v = vals[p];
      const auto src = d.row(cols[p]);
      for (std::size_t j = 0; j < out_row.size(); ++j) out_row[j] += v * src[j];
    }
  }
  return out;
}

DenseMatrix SpmmTransA(const CsrMatrix& s, const DenseMatrix& d) {
  Require(s.rows() == d.rows(),
          "SpmmTransA: sparse has " + std::to_string(s.rows()) +
              " rows but dense has " + std::to_string(d.rows()));
  DenseMatrix out(s.cols(), d.cols());
  for (std::size_t r = 0; r < s.rows(); ++r) {
    const auto cols = s.RowColumns(r);
    const auto vals = s.RowValues(r);
    const auto src = d.row(r);
    for (std::size_t p = 0; p < cols.size(); ++p) {
      const double v = vals[p];
      auto out_row = out.row(cols[p]);
      for (std::size_t j = 0; j < out_row.size(); ++j) out_row[j] += v * src[j];
    }
  }
  return out;
}

FeatureOperand::FeatureOperand(const DenseMatrix& x) : dense_(&x) {
  std::size_t nnz = 0;
  for (double v : x.values()) nnz += v != 0.0;
  const double density =
      x.size() == 0 ? 1.0
                    : static_cast<double>(nnz) / static_cast<double>(x.size());
  if (density < kSparseDensity) {
    use_sparse_ = true;
    sparse_ = CsrMatrix::FromDense(x);
  }
}

DenseMatrix FeatureOperand::Times(const DenseMatrix& w) const {
  return use_sparse_ ? Spmm(sparse_, w) : MatMul(*dense_, w);
}

DenseMatrix FeatureOperand::TransposeTimes(const DenseMatrix& g) const {
  return use_sparse_ ? SpmmTransA(sparse_, g) : MatMulTransA(*dense_, g);
}

}  // namespace rsgnn
