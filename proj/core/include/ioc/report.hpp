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
#include <string>
#include <string_view>
#include <vector>

#include "ioc/measure.hpp"
#include "ioc/rectangle.hpp"
#include "ioc/solver.hpp"

namespace ioc {

/// Parsed problem input: the two raw weight lists in the caller's order,
/// with optional index labels.
struct ProblemFile {
  std::vector<double> mu;
  std::vector<double> nu;
  std::vector<std::string> mu_labels;  // empty when absent
  std::vector<std::string> nu_labels;
  /// A coupling matrix supplied for certification, row-major in the
  /// caller's order; empty unless the input carried one.
  Matrix pi;
};

/// Parses either the JSON object form {"mu": [...], "nu": [...]} or the
/// two-column text form with lines "mu <weight>" / "nu <weight>".
/// Throws ParseError with a position-bearing message on malformed input.
ProblemFile parse_problem(std::string_view text);

/// Zero-stripping pre-filter: drops weights that are exactly zero and
/// remembers where they were so outputs can be padded back.
struct StrippedProblem {
  ProblemFile reduced;
  std::vector<int> mu_kept;  // reduced index -> original index
  std::vector<int> nu_kept;
  int mu_original_size = 0;
  int nu_original_size = 0;
  bool stripped_any = false;
};
StrippedProblem strip_zeros(const ProblemFile& input);

/// Pads a reduced-problem matrix back to the original shape with zero rows
/// and columns at the stripped positions.
Matrix reinsert_zeros(const Matrix& reduced, const std::vector<int>& row_map,
                      const std::vector<int>& col_map, int original_rows,
                      int original_cols);

/// Reorders a sorted-order matrix into the caller's original indexing.
Matrix to_original_order(const Matrix& sorted, const Marginal& mu,
                         const Marginal& nu);

/// Full result record emitted by the CLI: the coupling in the caller's
/// index order plus the sorted-order diagnostics (multipliers, corner,
/// trace) together with the permutations tying the two views together.
struct SolutionReport {
  std::string method;  // "staircase", "rectangle", "oracle", or "check"
  std::vector<double> mu;  // caller's order, as solved (post strip/pad)
  std::vector<double> nu;
  std::vector<std::string> mu_labels;
  std::vector<std::string> nu_labels;
  Matrix coupling;                // caller's order
  std::vector<double> row_sums;   // echo of the coupling's sums
  std::vector<double> col_sums;
  double ic = 0.0;
  bool condition_h = false;
  std::optional<RectangleCorner> corner;  // sorted-order indices
  int iterations = 0;
  Certificate certificate;
  std::vector<double> lambda;  // sorted order
  std::vector<double> omega;
  double theta = 0.0;
  Matrix multipliers;              // sorted order
  std::vector<int> mu_sort_perm;   // sorted index -> caller index
  std::vector<int> nu_sort_perm;
  std::vector<TraceEntry> trace;
};

/// Serializes with round-trip-exact doubles (17 significant digits).
std::string to_json(const SolutionReport& report);
SolutionReport report_from_json(std::string_view text);

/// Human-readable rendering.
std::string to_text(const SolutionReport& report);

std::string to_json(const ProportionEstimate& estimate);
std::string to_text(const ProportionEstimate& estimate);

}  // namespace ioc
