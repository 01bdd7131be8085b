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

/// Solver iterate: the current coupling candidate, the multiplier matrix of
/// the nonnegativity constraints, and the additive shifts (lambda, omega,
/// theta) that witness Lagrangian stationarity at every point of the run.
struct SolverState {
  Matrix m;
  Matrix r;
  std::vector<double> lambda;
  std::vector<double> omega;
  double theta = 0.0;
  int current_row = 0;
  std::vector<double> mu;  // sorted target row sums
  std::vector<double> nu;  // sorted target column sums

  /// Validates the nine structural invariants the row-repair step both
  /// requires and preserves: monotonicity in v everywhere and in u from
  /// current_row down, marginal preservation, nonnegativity of settled
  /// rows, the zero block under the current row's zero index, the
  /// non-increasing zero-index sequence, multiplier support and sign, and
  /// stationarity with complementary slackness. Throws
  /// InvariantViolationError naming the first failure.
  void check_invariants() const;
};

struct TraceEntry {
  int row = 0;         // row transformed by the step
  int zero_count = 0;  // its leading-zero index
  double mass = 0.0;   // mass removed from the zeroed strip (negative)
};

struct Solution {
  Coupling pi_star;
  Matrix multipliers;  // r
  std::vector<double> lambda;
  std::vector<double> omega;
  double theta = 0.0;
  int productive_iterations = 0;
  std::vector<TraceEntry> trace;  // filled only when requested
};

/// KKT residuals of a candidate solution, one field per condition.
struct Certificate {
  double max_negative_entry = 0.0;        // primal feasibility (sign)
  double max_marginal_residual = 0.0;     // primal feasibility (sums)
  double max_negative_multiplier = 0.0;   // dual feasibility
  double max_slackness_violation = 0.0;   // complementary slackness
  double max_stationarity_residual = 0.0; // Lagrangian gradient
  bool valid = false;
};

struct CertificateTolerances {
  double entry_nonneg = 1e-10;
  double marginal = 1e-10;
  double multiplier_nonneg = 1e-12;
  double slackness = 1e-10;
  double stationarity = 1e-9;

  /// All five tolerances set to t (used when certifying iterative output).
  static CertificateTolerances relaxed(double t) { return {t, t, t, t, t}; }
};

struct SolveOptions {
  bool record_trace = false;
  /// Check the full invariant set before every step. Cheap at the sizes
  /// this library targets; disable only in benchmarks.
  bool check_invariants = true;
};

/// Smallest count z such that zeroing the first z entries of row u and
/// spreading their mass over the remaining q - z leaves the row
/// nonnegative. Requires a nondecreasing row with positive sum.
int leading_zero_index(const Matrix& m, int u);
int leading_zero_index(const SignedMatrix& m, int u);

/// Fresh state for a pair of margins: the balanced coupling with matching
/// shifts and a zero multiplier matrix.
SolverState make_initial_state(const Marginal& mu, const Marginal& nu);

/// Applies one row-repair step to the state's current row (or just advances
/// past it when the row is already nonnegative).
SolverState one_step(SolverState state, bool check_invariants = true);

bool has_negative_entry(const SolverState& state);

/// Computes the coupling of minimal index of coincidence for (mu, nu),
/// in sorted order, together with the multipliers certifying optimality.
/// Runs at most p - 1 productive repair steps.
Solution solve(const Marginal& mu, const Marginal& nu,
               const SolveOptions& options = {});

/// Evaluates every KKT condition of a candidate solution against the given
/// margins. A failing certificate is a value, not an error.
Certificate verify_kkt(const Solution& sol, const Marginal& mu,
                       const Marginal& nu,
                       const CertificateTolerances& tols = {});

/// Multipliers fitted to a bare coupling: least-squares additive fit
/// lambda_u + omega_v + theta on the support above `support_threshold`,
/// with the multiplier matrix defined by the stationarity identity.
struct RecoveredMultipliers {
  std::vector<double> lambda;
  std::vector<double> omega;
  double theta = 0.0;
  Matrix r;
};
RecoveredMultipliers recover_multipliers(const Matrix& pi,
                                         double support_threshold = 1e-8);

/// Certificate for a bare coupling with no multipliers attached; they are
/// recovered by least squares first. Used to check third-party matrices
/// and iterative output. The Matrix form runs on any table, reporting
/// feasibility violations through the certificate instead of refusing.
Certificate verify_kkt(const Matrix& pi, const Marginal& mu,
                       const Marginal& nu,
                       const CertificateTolerances& tols = {},
                       double support_threshold = 1e-8);
Certificate verify_kkt(const SignedMatrix& pi, const Marginal& mu,
                       const Marginal& nu,
                       const CertificateTolerances& tols = {},
                       double support_threshold = 1e-8);

}  // namespace ioc
