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

#include <optional>
#include <vector>

#include "ioc/matrix.hpp"

namespace ioc {

/// Corner of the candidate zero rectangle: the optimal coupling vanishes on
/// rows < p1 and columns < q1 (counts, so (0, 0) means no zero block).
struct RectangleCorner {
  int p1 = 0;
  int q1 = 0;

  bool empty() const { return p1 == 0 && q1 == 0; }
  friend bool operator==(const RectangleCorner&,
                         const RectangleCorner&) = default;
};

/// Mass removed from the balanced coupling by zeroing the rectangle:
/// per-row sums, per-column sums, and the (nonpositive) total.
struct Deltas {
  std::vector<double> delta_rows;  // length p1
  std::vector<double> delta_cols;  // length q1
  double delta_total = 0.0;
};

/// Row, column and total sums of the multiplier matrix in closed form.
struct Aggregates {
  std::vector<double> row_sums;  // length p, zero outside the rectangle rows
  std::vector<double> col_sums;  // length q
  double total = 0.0;
};

/// Locates the zero-rectangle corner of a balanced coupling built from
/// sorted margins: q1 from the first row, p1 from the first column.
/// Returns (0, 0) when the matrix is already nonnegative.
RectangleCorner corner(const SignedMatrix& pi_plus);

/// Mass bookkeeping over the given rectangle. Accepts any corner with
/// 0 <= p1 <= p and 0 <= q1 <= q (the full-matrix corner is legal here and
/// sums to the total mass).
Deltas deltas(const SignedMatrix& pi_plus, const RectangleCorner& c);

/// Closed-form multiplier aggregates. Requires p1 < p and q1 < q.
Aggregates aggregates(const Deltas& d, const RectangleCorner& c, int p,
                      int q);

/// Entrywise multiplier field inside the rectangle, zero outside.
/// Requires p1 < p and q1 < q.
Matrix multiplier_field(const SignedMatrix& pi_plus, const Deltas& d,
                        const RectangleCorner& c);

/// Single-rectangle closed form: zeroes the rectangle and redistributes its
/// mass along the row remainders, the column remainders, and the lower
/// right block. Throws NotEligibleError if the result has a genuinely
/// negative entry, which signals that the zero set of the optimum is not a
/// single rectangle.
Coupling pi_tilde(const SignedMatrix& pi_plus, const RectangleCorner& c);

/// Detects a posteriori whether a solved coupling's zero set is exactly a
/// rectangle {u < p1} x {v < q1}, and returns its corner if so. The empty
/// corner is returned for strictly positive couplings. This is a
/// structural check on the computed matrix, not a margin criterion.
std::optional<RectangleCorner> detect_rectangle(const Matrix& pi,
                                                double eps = tol::kSignEps);

}  // namespace ioc
