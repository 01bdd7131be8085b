// Copyright 2026 The ioc Authors
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

#pragma once

#include <span>
#include <vector>

#include "ioc/marginal.hpp"
#include "ioc/tolerances.hpp"

namespace ioc {

/// Dense row-major matrix of doubles. Plain storage, no invariants.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double value = 0.0);

  /// Builds from nested initializer data; all rows must share one length.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double operator()(int u, int v) const { return data_[u * cols_ + v]; }
  double& operator()(int u, int v) { return data_[u * cols_ + v]; }

  std::span<const double> row(int u) const {
    return {data_.data() + u * cols_, static_cast<std::size_t>(cols_)};
  }
  std::span<double> row(int u) {
    return {data_.data() + u * cols_, static_cast<std::size_t>(cols_)};
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double row_sum(int u) const;
  double col_sum(int v) const;
  double sum() const;
  double min_entry() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Largest entrywise absolute difference between two same-shape matrices.
double max_abs_difference(const Matrix& a, const Matrix& b);

/// A real p x q matrix carrying prescribed row and column sums, with
/// entries allowed to be negative. Validation checks that each row and
/// column actually reproduces its prescribed sum within 1e-10 and that the
/// total mass is one within 1e-10.
class SignedMatrix {
 public:
  /// Empty placeholder; every validated instance comes from the
  /// constructors below.
  SignedMatrix() = default;

  SignedMatrix(Matrix entries, std::vector<double> row_sums,
               std::vector<double> col_sums);

  /// Prescribed sums taken from the entries themselves. The total must
  /// still be one within tolerance.
  static SignedMatrix from_entries(Matrix entries);

  int rows() const { return entries_.rows(); }
  int cols() const { return entries_.cols(); }

  double operator()(int u, int v) const { return entries_(u, v); }

  const Matrix& entries() const { return entries_; }
  const std::vector<double>& row_sums() const { return row_sums_; }
  const std::vector<double>& col_sums() const { return col_sums_; }

  double min_entry() const { return entries_.min_entry(); }

  /// Worst row/column residual of the entries against the prescribed sums.
  double max_marginal_residual() const;

 private:
  Matrix entries_;
  std::vector<double> row_sums_;
  std::vector<double> col_sums_;
};

/// A nonnegative coupling: a SignedMatrix whose entries are nonnegative
/// (entries in (-1e-12, 0) are clamped to exact zero on construction).
class Coupling {
 public:
  /// Empty placeholder (zero-size table).
  Coupling() = default;

  /// Validates nonnegativity and marginal residuals; throws
  /// InvariantViolationError when either check fails.
  static Coupling from_matrix(SignedMatrix m,
                              double entry_tol = tol::kSignEps,
                              double marginal_tol = tol::kMarginalTol);

  const SignedMatrix& matrix() const { return matrix_; }
  const Matrix& entries() const { return matrix_.entries(); }

  int rows() const { return matrix_.rows(); }
  int cols() const { return matrix_.cols(); }
  double operator()(int u, int v) const { return matrix_(u, v); }

 private:
  explicit Coupling(SignedMatrix m) : matrix_(std::move(m)) {}

  SignedMatrix matrix_;
};

}  // namespace ioc
