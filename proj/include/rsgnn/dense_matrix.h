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

#ifndef RSGNN_DENSE_MATRIX_H_
#define RSGNN_DENSE_MATRIX_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rsgnn {

// Row-major matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  // Convenience for tests and small fixtures.
  static DenseMatrix FromRows(
      std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  void Fill(double v);
  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator*=(double s);

  bool operator==(const DenseMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

bool SameShape(const DenseMatrix& a, const DenseMatrix& b);

// a * b
DenseMatrix MatMul(const DenseMatrix& a, const DenseMatrix& b);
// transpose(a) * b
DenseMatrix MatMulTransA(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix Transpose(const DenseMatrix& a);

// Rows of `a` selected (and possibly repeated) by `index`.
DenseMatrix GatherRows(const DenseMatrix& a, std::span<const std::size_t> index);

double Dot(std::span<const double> a, std::span<const double> b);
double SquaredDistance(std::span<const double> a, std::span<const double> b);
double Distance(std::span<const double> a, std::span<const double> b);
double Norm(std::span<const double> a);

// Mean over rows, as a 1 x cols matrix.
DenseMatrix ColumnMean(const DenseMatrix& a);

bool AllFinite(const DenseMatrix& a);
double MaxAbsDiff(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace rsgnn

#endif  // RSGNN_DENSE_MATRIX_H_
