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

#include "ioc/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ioc/errors.hpp"

namespace ioc {

Matrix::Matrix(int rows, int cols, double value)
    : rows_(rows),
      cols_(cols),
      data_(static_cast<std::size_t>(rows) * cols, value) {
  if (rows < 0 || cols < 0)
    throw InvariantViolationError("matrix dimensions must be nonnegative");
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const int p = static_cast<int>(rows.size());
  const int q = p == 0 ? 0 : static_cast<int>(rows.front().size());
  Matrix m(p, q);
  for (int u = 0; u < p; ++u) {
    if (static_cast<int>(rows[u].size()) != q)
      throw InvariantViolationError("ragged row data");
    for (int v = 0; v < q; ++v) m(u, v) = rows[u][v];
  }
  return m;
}

double Matrix::row_sum(int u) const {
  double s = 0.0;
  for (int v = 0; v < cols_; ++v) s += (*this)(u, v);
  return s;
}

double Matrix::col_sum(int v) const {
  double s = 0.0;
  for (int u = 0; u < rows_; ++u) s += (*this)(u, v);
  return s;
}

double Matrix::sum() const {
  double s = 0.0;
  for (double x : data_) s += x;
  return s;
}

double Matrix::min_entry() const {
  return *std::min_element(data_.begin(), data_.end());
}

double max_abs_difference(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvariantViolationError("shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

namespace {

void validate_signed(const Matrix& entries, const std::vector<double>& rs,
                     const std::vector<double>& cs) {
  if (static_cast<int>(rs.size()) != entries.rows() ||
      static_cast<int>(cs.size()) != entries.cols())
    throw InvariantViolationError("prescribed sum length mismatch");
  for (int u = 0; u < entries.rows(); ++u)
    if (std::abs(entries.row_sum(u) - rs[u]) > tol::kMarginalTol)
      throw InvariantViolationError("row " + std::to_string(u) +
                                    " misses its prescribed sum");
  for (int v = 0; v < entries.cols(); ++v)
    if (std::abs(entries.col_sum(v) - cs[v]) > tol::kMarginalTol)
      throw InvariantViolationError("column " + std::to_string(v) +
                                    " misses its prescribed sum");
  if (std::abs(entries.sum() - 1.0) > tol::kMarginalTol)
    throw InvariantViolationError("total mass is not 1");
}

}  // namespace

SignedMatrix::SignedMatrix(Matrix entries, std::vector<double> row_sums,
                           std::vector<double> col_sums)
    : entries_(std::move(entries)),
      row_sums_(std::move(row_sums)),
      col_sums_(std::move(col_sums)) {
  validate_signed(entries_, row_sums_, col_sums_);
}

SignedMatrix SignedMatrix::from_entries(Matrix entries) {
  std::vector<double> rs(entries.rows()), cs(entries.cols());
  for (int u = 0; u < entries.rows(); ++u) rs[u] = entries.row_sum(u);
  for (int v = 0; v < entries.cols(); ++v) cs[v] = entries.col_sum(v);
  return SignedMatrix(std::move(entries), std::move(rs), std::move(cs));
}

double SignedMatrix::max_marginal_residual() const {
  double worst = 0.0;
  for (int u = 0; u < rows(); ++u)
    worst = std::max(worst, std::abs(entries_.row_sum(u) - row_sums_[u]));
  for (int v = 0; v < cols(); ++v)
    worst = std::max(worst, std::abs(entries_.col_sum(v) - col_sums_[v]));
  return worst;
}

Coupling Coupling::from_matrix(SignedMatrix m, double entry_tol,
                               double marginal_tol) {
  const double least = m.min_entry();
  if (least < -entry_tol)
    throw InvariantViolationError("coupling has a negative entry: " +
                                  std::to_string(least));
  if (m.max_marginal_residual() > marginal_tol)
    throw InvariantViolationError("coupling marginals drift beyond tolerance");
  if (least < 0.0) {
    // Negative dust within tolerance; clamp to exact zero.
    Matrix clamped = m.entries();
    for (double& x : clamped.data())
      if (x < 0.0) x = 0.0;
    m = SignedMatrix(std::move(clamped), m.row_sums(), m.col_sums());
  }
  return Coupling(std::move(m));
}

}  // namespace ioc
