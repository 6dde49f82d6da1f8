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

#include "rsgnn/dense_matrix.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "rsgnn/error.h"

namespace rsgnn {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  Require(data_.size() == rows_ * cols_,
          "DenseMatrix: data length " + std::to_string(data_.size()) +
              " does not match " + std::to_string(rows_) + "x" +
              std::to_string(cols_));
}

DenseMatrix DenseMatrix::FromRows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  DenseMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    Require(row.size() == c, "DenseMatrix::FromRows: ragged rows");
    std::copy(row.begin(), row.end(), m.row(i++).begin());
  }
  return m;
}

void DenseMatrix::Fill(double v) { std::fill(data_.begin(), data_.end(), v); }

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  Require(SameShape(*this, other), "DenseMatrix::operator+=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

bool SameShape(const DenseMatrix& a, const DenseMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols();
}

DenseMatrix MatMul(const DenseMatrix& a, const DenseMatrix& b) {
  Require(a.cols() == b.rows(), "MatMul: inner dimensions differ (" +
                                    std::to_string(a.cols()) + " vs " +
                                    std::to_string(b.rows()) + ")");
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    const auto a_row = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a_row[k];
      if (aik == 0.0) continue;
      const auto b_row = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aik * b_row[j];
    }
  }
  return out;
}

DenseMatrix MatMulTransA(const DenseMatrix& a, const DenseMatrix& b) {
  Require(a.rows() == b.rows(), "MatMulTransA: row counts differ (" +
                                    std::to_string(a.rows()) + " vs " +
                                    std::to_string(b.rows()) + ")");
  DenseMatrix out(a.cols(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto a_row = a.row(r);
    const auto b_row = b.row(r);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double ari = a_row[i];
      if (ari == 0.0) continue;
      auto out_row = out.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += ari * b_row[j];
    }
  }
  return out;
}

DenseMatrix Transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

DenseMatrix GatherRows(const DenseMatrix& a,
                       std::span<const std::size_t> index) {
  DenseMatrix out(index.size(), a.cols());
  for (std::size_t i = 0; i < index.size(); ++i) {
    Require(index[i] < a.rows(), "GatherRows: index out of range");
    const auto src = a.row(index[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double Distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(SquaredDistance(a, b));
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

DenseMatrix ColumnMean(const DenseMatrix& a) {
  DenseMatrix mean(1, a.cols());
  auto out = mean.row(0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += r[j];
  }
  if (a.rows() > 0) {
    const double inv = 1.0 / static_cast<double>(a.rows());
    for (double& v : out) v *= inv;
  }
  return mean;
}

bool AllFinite(const DenseMatrix& a) {
  return std::all_of(a.values().begin(), a.values().end(),
                     [](double v) { return std::isfinite(v); });
}

double MaxAbsDiff(const DenseMatrix& a, const DenseMatrix& b) {
  Require(SameShape(a, b), "MaxAbsDiff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

}  // namespace rsgnn
