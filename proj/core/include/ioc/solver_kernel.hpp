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
#include <utility>
#include <vector>

#include "ioc/errors.hpp"

// Scalar-generic implementation of the row-by-row repair that turns the
// balanced coupling into the optimal one. The production double path and
// the exact rational test oracle both instantiate these templates, so the
// two arithmetic modes share one algorithm by construction.
//
// Scalar requirements: value-initializable to zero, +,-,*,/ and
// comparisons, and explicit construction from int.

namespace ioc::kernel {

template <class Scalar>
struct State {
  int rows = 0;
  int cols = 0;
  std::vector<Scalar> coupling;    // row-major iterate, starts at pi_plus
  std::vector<Scalar> multiplier;  // row-major multipliers of -pi <= 0
  std::vector<Scalar> row_shift;   // lambda
  std::vector<Scalar> col_shift;   // omega
  Scalar global_shift{};           // theta
  int current_row = 0;             // rows before this index are settled

  Scalar& m(int u, int v) { return coupling[u * cols + v]; }
  const Scalar& m(int u, int v) const { return coupling[u * cols + v]; }
  Scalar& r(int u, int v) { return multiplier[u * cols + v]; }
  const Scalar& r(int u, int v) const { return multiplier[u * cols + v]; }
};

/// Initial state: the balanced coupling with shifts chosen so that
/// m(u,v) = row_shift[u] + col_shift[v] + global_shift holds identically.
template <class Scalar>
State<Scalar> initial_state(std::span<const Scalar> mu,
                            std::span<const Scalar> nu) {
  const int p = static_cast<int>(mu.size());
  const int q = static_cast<int>(nu.size());
  State<Scalar> s;
  s.rows = p;
  s.cols = q;
  s.coupling.resize(static_cast<std::size_t>(p) * q);
  s.multiplier.assign(static_cast<std::size_t>(p) * q, Scalar{});
  s.row_shift.resize(p);
  s.col_shift.resize(q);
  const Scalar inv_pq = Scalar(1) / (Scalar(p) * Scalar(q));
  for (int u = 0; u < p; ++u) s.row_shift[u] = mu[u] / Scalar(q);
  for (int v = 0; v < q; ++v) s.col_shift[v] = nu[v] / Scalar(p);
  s.global_shift = Scalar{} - inv_pq;
  for (int u = 0; u < p; ++u)
    for (int v = 0; v < q; ++v)
      s.m(u, v) = s.row_shift[u] + s.col_shift[v] + s.global_shift;
  return s;
}

/// Smallest count z in {0, ..., q-1} such that zeroing the first z entries
/// of the row and spreading their mass over the rest leaves entry z
/// nonnegative: (q - z) * row[z] + sum(row[0..z)) >= -neg_eps.
///
/// Requires a nondecreasing row with positive total; z = q-1 then always
/// qualifies, so the scan cannot fall through for valid inputs.
template <class Scalar>
int leading_zero_index(std::span<const Scalar> row, const Scalar& neg_eps) {
  const int q = static_cast<int>(row.size());
  Scalar prefix{};
  for (int z = 0; z < q; ++z) {
    const Scalar value = Scalar(q - z) * row[z] + prefix;
    if (!(value < Scalar{} - neg_eps)) return z;
    prefix = prefix + row[z];
  }
  throw NoAdmissibleIndexError(
      "no admissible leading-zero index: row total is not positive");
}

template <class Scalar>
bool row_has_negative(const State<Scalar>& s, int u, const Scalar& neg_eps) {
  for (int v = 0; v < s.cols; ++v)
    if (s.m(u, v) < Scalar{} - neg_eps) return true;
  return false;
}

template <class Scalar>
bool has_negative(const State<Scalar>& s, const Scalar& neg_eps) {
  for (const Scalar& x : s.coupling)
    if (x < Scalar{} - neg_eps) return true;
  return false;
}

template <class Scalar>
struct StepOutcome {
  bool transformed = false;
  int zero_count = 0;  // q_l of the processed row
  Scalar mass{};       // the (negative) mass removed from the zeroed strip
};

/// One repair step on row l = current_row.
///
/// If the row is already nonnegative, only advances current_row. Otherwise
/// zeroes the leading strip of the row, redistributes its mass over the
/// row remainder and the rows below, and extends the multiplier matrix and
/// the shifts so that stationarity and complementary slackness keep
/// holding exactly.
template <class Scalar>
StepOutcome<Scalar> step_in_place(State<Scalar>& s, const Scalar& neg_eps) {
  const int p = s.rows;
  const int q = s.cols;
  const int l = s.current_row;
  if (l < 0 || l >= p)
    throw InvariantViolationError("step requested past the last row");

  if (!row_has_negative(s, l, neg_eps)) {
    s.current_row = l + 1;
    return {};
  }
  if (l == p - 1)
    throw InvariantViolationError(
        "negative entry in the last row: marginals are inconsistent");

  const int zl = leading_zero_index(
      std::span<const Scalar>(s.coupling.data() + l * q, q), neg_eps);

  Scalar mass{};
  std::vector<Scalar> cell(zl);  // old entries of the zeroed strip
  for (int v = 0; v < zl; ++v) {
    cell[v] = s.m(l, v);
    mass = mass + cell[v];
  }

  const Scalar below = Scalar(p - 1 - l);            // rows strictly under l
  const Scalar row_spread = mass / Scalar(q - zl);   // correction on row l
  const Scalar spread = row_spread / below;          // mass / (below*(q-zl))

  // Multipliers: rows above l accumulate, row l is written fresh.
  for (int u = 0; u < l; ++u)
    for (int v = 0; v < zl; ++v)
      s.r(u, v) = s.r(u, v) - cell[v] / below - spread;
  for (int v = 0; v < zl; ++v)
    s.r(l, v) = Scalar{} - cell[v] - row_spread - cell[v] / below - spread;

  // Iterate update: four regions.
  for (int v = 0; v < zl; ++v) s.m(l, v) = Scalar{};
  for (int v = zl; v < q; ++v) s.m(l, v) = s.m(l, v) + row_spread;
  for (int u = l + 1; u < p; ++u) {
    for (int v = 0; v < zl; ++v) s.m(u, v) = s.m(u, v) + cell[v] / below;
    for (int v = zl; v < q; ++v) s.m(u, v) = s.m(u, v) - spread;
  }

  // Shifts, keeping m = row_shift + col_shift + global_shift + r exact.
  for (int u = 0; u < l; ++u) s.row_shift[u] = s.row_shift[u] + spread;
  s.row_shift[l] = s.row_shift[l] + row_spread + spread;
  for (int v = 0; v < zl; ++v)
    s.col_shift[v] = s.col_shift[v] + cell[v] / below + spread;
  s.global_shift = s.global_shift - spread;

  s.current_row = l + 1;
  return {true, zl, mass};
}

template <class Scalar>
struct TraceEntry {
  int row = 0;
  int zero_count = 0;
  Scalar mass{};
};

template <class Scalar>
struct RunResult {
  State<Scalar> state;
  int productive_steps = 0;
  std::vector<TraceEntry<Scalar>> trace;
};

/// Repairs rows until no entry is below -neg_eps. At most rows-1 productive
/// steps can occur; exceeding that bound means the inputs were not valid
/// marginals and raises NoConvergenceError.
template <class Scalar>
RunResult<Scalar> run_to_nonnegative(State<Scalar> state, const Scalar& neg_eps,
                                     bool record_trace = false) {
  RunResult<Scalar> result{std::move(state)};
  while (has_negative(result.state, neg_eps)) {
    if (result.state.current_row >= result.state.rows)
      throw NoConvergenceError(
          "negative entries remain after the last repairable row");
    const auto outcome = step_in_place(result.state, neg_eps);
    if (outcome.transformed) {
      ++result.productive_steps;
      if (result.productive_steps > result.state.rows - 1)
        throw NoConvergenceError("productive step budget exceeded");
      if (record_trace)
        result.trace.push_back({result.state.current_row - 1,
                                outcome.zero_count, outcome.mass});
    }
  }
  return result;
}

}  // namespace ioc::kernel
