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

#include "ioc/rectangle.hpp"

#include <string>
#include <vector>

#include "ioc/couplings.hpp"
#include "ioc/errors.hpp"
#include "ioc/solver_kernel.hpp"

namespace ioc {

RectangleCorner corner(const SignedMatrix& pi_plus) {
  if (pi_plus.min_entry() >= -tol::kSignEps) return {0, 0};
  const int p = pi_plus.rows();
  const int q1 =
      kernel::leading_zero_index(pi_plus.entries().row(0), tol::kSignEps);
  std::vector<double> first_col(p);
  for (int u = 0; u < p; ++u) first_col[u] = pi_plus(u, 0);
  const int p1 = kernel::leading_zero_index(
      std::span<const double>(first_col), tol::kSignEps);
  return {p1, q1};
}

Deltas deltas(const SignedMatrix& pi_plus, const RectangleCorner& c) {
  Deltas d;
  d.delta_rows.assign(c.p1, 0.0);
  d.delta_cols.assign(c.q1, 0.0);
  for (int u = 0; u < c.p1; ++u)
    for (int v = 0; v < c.q1; ++v) {
      d.delta_rows[u] += pi_plus(u, v);
      d.delta_cols[v] += pi_plus(u, v);
      d.delta_total += pi_plus(u, v);
    }
  return d;
}

namespace {

void require_proper(const RectangleCorner& c, int p, int q) {
  if (c.p1 >= p || c.q1 >= q)
    throw DegenerateCornerError("corner (" + std::to_string(c.p1) + ", " +
                                std::to_string(c.q1) +
                                ") leaves no rows or columns to carry mass");
}

}  // namespace

Aggregates aggregates(const Deltas& d, const RectangleCorner& c, int p,
                      int q) {
  require_proper(c, p, q);
  Aggregates a;
  a.row_sums.assign(p, 0.0);
  a.col_sums.assign(q, 0.0);
  const double row_share = d.delta_total / (p - c.p1);
  const double col_share = d.delta_total / (q - c.q1);
  for (int u = 0; u < c.p1; ++u)
    a.row_sums[u] = -(static_cast<double>(q) / (q - c.q1)) *
                    (d.delta_rows[u] + row_share);
  for (int v = 0; v < c.q1; ++v)
    a.col_sums[v] = -(static_cast<double>(p) / (p - c.p1)) *
                    (d.delta_cols[v] + col_share);
  a.total = -(static_cast<double>(p) * q * d.delta_total) /
            (static_cast<double>(p - c.p1) * (q - c.q1));
  return a;
}

Matrix multiplier_field(const SignedMatrix& pi_plus, const Deltas& d,
                        const RectangleCorner& c) {
  const int p = pi_plus.rows(), q = pi_plus.cols();
  require_proper(c, p, q);
  Matrix r(p, q);
  const double block_share =
      d.delta_total / (static_cast<double>(p - c.p1) * (q - c.q1));
  for (int u = 0; u < c.p1; ++u)
    for (int v = 0; v < c.q1; ++v)
      r(u, v) = -pi_plus(u, v) - d.delta_rows[u] / (q - c.q1) -
                d.delta_cols[v] / (p - c.p1) - block_share;
  return r;
}

Coupling pi_tilde(const SignedMatrix& pi_plus, const RectangleCorner& c) {
  const int p = pi_plus.rows(), q = pi_plus.cols();
  if (c.empty()) {
    if (pi_plus.min_entry() < -tol::kSignEps)
      throw NotEligibleError(
          "empty corner passed for a matrix with negative entries");
    return Coupling::from_matrix(pi_plus);  // nothing to repair
  }
  require_proper(c, p, q);
  const Deltas d = deltas(pi_plus, c);
  const double block_share =
      d.delta_total / (static_cast<double>(p - c.p1) * (q - c.q1));
  Matrix out(p, q);
  for (int u = 0; u < p; ++u)
    for (int v = 0; v < q; ++v) {
      const bool in_rows = u < c.p1;
      const bool in_cols = v < c.q1;
      if (in_rows && in_cols) continue;  // zero block
      double x = pi_plus(u, v);
      if (in_rows) x += d.delta_rows[u] / (q - c.q1);
      if (in_cols) x += d.delta_cols[v] / (p - c.p1);
      x += block_share * ((in_rows ? 1 : 0) + (in_cols ? 1 : 0) - 1);
      out(u, v) = x;
    }
  const double least = out.min_entry();
  if (least < -tol::kSignEps)
    throw NotEligibleError(
        "rectangle form produced a negative entry (" + std::to_string(least) +
        "): the zero set of the optimum is not a single rectangle");
  return Coupling::from_matrix(
      SignedMatrix(std::move(out), pi_plus.row_sums(), pi_plus.col_sums()));
}

std::optional<RectangleCorner> detect_rectangle(const Matrix& pi, double eps) {
  if (!is_zero_staircase(pi, eps)) return std::nullopt;
  const auto counts = zero_prefix_counts(pi, eps);
  int p1 = 0;
  while (p1 < pi.rows() && counts[p1] > 0) ++p1;
  if (p1 == 0) return RectangleCorner{0, 0};
  const int q1 = counts[0];
  for (int u = 0; u < p1; ++u)
    if (counts[u] != q1) return std::nullopt;
  return RectangleCorner{p1, q1};
}

}  // namespace ioc
