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

#include "ioc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ioc/errors.hpp"
#include "ioc/solver_kernel.hpp"

namespace ioc {

namespace {

kernel::State<double> to_kernel(const SolverState& s) {
  kernel::State<double> k;
  k.rows = s.m.rows();
  k.cols = s.m.cols();
  k.coupling = s.m.data();
  k.multiplier = s.r.data();
  k.row_shift = s.lambda;
  k.col_shift = s.omega;
  k.global_shift = s.theta;
  k.current_row = s.current_row;
  return k;
}

void from_kernel(const kernel::State<double>& k, SolverState& s) {
  s.m.data() = k.coupling;
  s.r.data() = k.multiplier;
  s.lambda = k.row_shift;
  s.omega = k.col_shift;
  s.theta = k.global_shift;
  s.current_row = k.current_row;
}

[[noreturn]] void fail(const std::string& what) {
  throw InvariantViolationError("solver invariant failed: " + what);
}

kernel::StepOutcome<double> step_state(SolverState& state) {
  auto k = to_kernel(state);
  const auto outcome = kernel::step_in_place(k, tol::kSignEps);
  from_kernel(k, state);
  return outcome;
}

}  // namespace

int leading_zero_index(const Matrix& m, int u) {
  return kernel::leading_zero_index(m.row(u), tol::kSignEps);
}

int leading_zero_index(const SignedMatrix& m, int u) {
  return leading_zero_index(m.entries(), u);
}

void SolverState::check_invariants() const {
  const int p = m.rows(), q = m.cols();
  const int l = current_row;

  // 1. nondecreasing along every row
  for (int u = 0; u < p; ++u)
    for (int v = 0; v + 1 < q; ++v)
      if (m(u, v + 1) < m(u, v) - tol::kSignEps)
        fail("row " + std::to_string(u) + " is not nondecreasing");

  // 2. nondecreasing in u from the current row down
  for (int u = std::max(l, 0); u + 1 < p; ++u)
    for (int v = 0; v < q; ++v)
      if (m(u + 1, v) < m(u, v) - tol::kSignEps)
        fail("columns are not nondecreasing below the current row");

  // 3. marginals preserved, positive, nondecreasing
  for (int u = 0; u < p; ++u)
    if (std::abs(m.row_sum(u) - mu[u]) > tol::kMarginalTol)
      fail("row sum drifted from its target");
  for (int v = 0; v < q; ++v)
    if (std::abs(m.col_sum(v) - nu[v]) > tol::kMarginalTol)
      fail("column sum drifted from its target");

  // 4. settled rows are nonnegative
  for (int u = 0; u < std::min(l, p); ++u)
    for (int v = 0; v < q; ++v)
      if (m(u, v) < -tol::kSignEps) fail("settled row has a negative entry");

  if (l < p) {
    // 5. settled rows vanish under the current row's zero index
    const int zl = kernel::leading_zero_index(m.row(l), tol::kSignEps);
    for (int u = 0; u < l; ++u)
      for (int v = 0; v < zl; ++v)
        if (std::abs(m(u, v)) > tol::kSignEps)
          fail("zero block above the current row is not zero");

    // 6. zero indices non-increasing from the current row down
    int prev = zl;
    for (int u = l + 1; u < p; ++u) {
      const int zu = kernel::leading_zero_index(m.row(u), tol::kSignEps);
      if (zu > prev) fail("leading-zero indices increase down the rows");
      prev = zu;
    }
  }

  // 7. multiplier rows at and below the current row are untouched
  for (int u = std::max(l, 0); u < p; ++u)
    for (int v = 0; v < q; ++v)
      if (r(u, v) != 0.0) fail("multiplier written below the current row");

  // 8. multipliers nonnegative
  for (double x : r.data())
    if (x < -tol::kSignEps) fail("negative multiplier");

  // 9. stationarity and complementary slackness
  for (int u = 0; u < p; ++u)
    for (int v = 0; v < q; ++v) {
      if (std::abs(m(u, v) - (lambda[u] + omega[v] + theta) - r(u, v)) >
          tol::kStationarityTol)
        fail("stationarity residual beyond tolerance");
      if (std::abs(r(u, v) * m(u, v)) > tol::kSlacknessTol)
        fail("complementary slackness violated");
    }
}

SolverState make_initial_state(const Marginal& mu, const Marginal& nu) {
  const auto k = kernel::initial_state<double>(mu.weights(), nu.weights());
  SolverState s;
  s.m = Matrix(k.rows, k.cols);
  s.r = Matrix(k.rows, k.cols);
  s.mu = mu.weights();
  s.nu = nu.weights();
  from_kernel(k, s);
  return s;
}

SolverState one_step(SolverState state, bool check_invariants) {
  if (check_invariants) state.check_invariants();
  step_state(state);
  return state;
}

bool has_negative_entry(const SolverState& state) {
  return state.m.min_entry() < -tol::kSignEps;
}

Solution solve(const Marginal& mu, const Marginal& nu,
               const SolveOptions& options) {
  SolverState state = make_initial_state(mu, nu);
  Solution out;
  int productive = 0;
  while (has_negative_entry(state)) {
    if (state.current_row >= state.m.rows())
      throw NoConvergenceError("negative entries survived every row repair");
    if (options.check_invariants) state.check_invariants();
    const auto outcome = step_state(state);
    if (outcome.transformed) {
      if (++productive > state.m.rows() - 1)
        throw NoConvergenceError("productive step budget exceeded");
      if (options.record_trace)
        out.trace.push_back(
            {state.current_row - 1, outcome.zero_count, outcome.mass});
    }
  }
  if (options.check_invariants) state.check_invariants();

  out.pi_star = Coupling::from_matrix(
      SignedMatrix(std::move(state.m), state.mu, state.nu));
  out.multipliers = std::move(state.r);
  // Multiplier dust from cancellation is clamped like coupling dust.
  for (double& x : out.multipliers.data())
    if (x < 0.0 && x > -tol::kSignEps) x = 0.0;
  out.lambda = std::move(state.lambda);
  out.omega = std::move(state.omega);
  out.theta = state.theta;
  out.productive_iterations = productive;
  return out;
}

namespace {

Certificate finish_certificate(Certificate c, const CertificateTolerances& t) {
  c.valid = c.max_negative_entry <= t.entry_nonneg &&
            c.max_marginal_residual <= t.marginal &&
            c.max_negative_multiplier <= t.multiplier_nonneg &&
            c.max_slackness_violation <= t.slackness &&
            c.max_stationarity_residual <= t.stationarity;
  return c;
}

Certificate certify(const Matrix& pi, const Matrix& r,
                    const std::vector<double>& lambda,
                    const std::vector<double>& omega, double theta,
                    const std::vector<double>& mu,
                    const std::vector<double>& nu,
                    const CertificateTolerances& tols) {
  Certificate c;
  const int p = pi.rows(), q = pi.cols();
  c.max_negative_entry = std::max(0.0, -pi.min_entry());
  for (int u = 0; u < p; ++u)
    c.max_marginal_residual =
        std::max(c.max_marginal_residual, std::abs(pi.row_sum(u) - mu[u]));
  for (int v = 0; v < q; ++v)
    c.max_marginal_residual =
        std::max(c.max_marginal_residual, std::abs(pi.col_sum(v) - nu[v]));
  c.max_marginal_residual =
      std::max(c.max_marginal_residual, std::abs(pi.sum() - 1.0));
  c.max_negative_multiplier = std::max(0.0, -r.min_entry());
  for (int u = 0; u < p; ++u)
    for (int v = 0; v < q; ++v) {
      c.max_slackness_violation =
          std::max(c.max_slackness_violation, std::abs(r(u, v) * pi(u, v)));
      c.max_stationarity_residual = std::max(
          c.max_stationarity_residual,
          std::abs(pi(u, v) - (lambda[u] + omega[v] + theta + r(u, v))));
    }
  return finish_certificate(c, tols);
}

}  // namespace

Certificate verify_kkt(const Solution& sol, const Marginal& mu,
                       const Marginal& nu, const CertificateTolerances& tols) {
  return certify(sol.pi_star.entries(), sol.multipliers, sol.lambda, sol.omega,
                 sol.theta, mu.weights(), nu.weights(), tols);
}

RecoveredMultipliers recover_multipliers(const Matrix& pi,
                                         double support_threshold) {
  const int p = pi.rows(), q = pi.cols();
  // Additive least-squares fit pi ~ a_u + b_v on the support, by block
  // coordinate descent (each pass is the exact minimizer in one block).
  std::vector<double> a(p, 0.0), b(q, 0.0);
  for (int pass = 0; pass < 200; ++pass) {
    double moved = 0.0;
    for (int u = 0; u < p; ++u) {
      double sum = 0.0;
      int count = 0;
      for (int v = 0; v < q; ++v)
        if (pi(u, v) > support_threshold) {
          sum += pi(u, v) - b[v];
          ++count;
        }
      if (count > 0) {
        const double next = sum / count;
        moved = std::max(moved, std::abs(next - a[u]));
        a[u] = next;
      }
    }
    for (int v = 0; v < q; ++v) {
      double sum = 0.0;
      int count = 0;
      for (int u = 0; u < p; ++u)
        if (pi(u, v) > support_threshold) {
          sum += pi(u, v) - a[u];
          ++count;
        }
      if (count > 0) {
        const double next = sum / count;
        moved = std::max(moved, std::abs(next - b[v]));
        b[v] = next;
      }
    }
    if (moved < 1e-15) break;
  }

  RecoveredMultipliers out;
  // Gauge choice: theta carries the grand mean of the fit so lambda and
  // omega stay near the scale of the margins.
  out.theta = -1.0 / (static_cast<double>(p) * q);
  out.lambda.assign(p, 0.0);
  out.omega = b;
  const double lift = -out.theta / 2.0;
  for (int u = 0; u < p; ++u) out.lambda[u] = a[u] + lift;
  for (int v = 0; v < q; ++v) out.omega[v] = b[v] + lift;
  out.r = Matrix(p, q);
  for (int u = 0; u < p; ++u)
    for (int v = 0; v < q; ++v) {
      const double plane = out.lambda[u] + out.omega[v] + out.theta;
      // Stationarity defines the multiplier; on the support it is the fit
      // residual and should be ~0, on the zero set it must come out >= 0.
      out.r(u, v) = pi(u, v) - plane;
    }
  return out;
}

Certificate verify_kkt(const Matrix& pi, const Marginal& mu,
                       const Marginal& nu, const CertificateTolerances& tols,
                       double support_threshold) {
  const auto rec = recover_multipliers(pi, support_threshold);
  return certify(pi, rec.r, rec.lambda, rec.omega, rec.theta, mu.weights(),
                 nu.weights(), tols);
}

Certificate verify_kkt(const SignedMatrix& pi, const Marginal& mu,
                       const Marginal& nu, const CertificateTolerances& tols,
                       double support_threshold) {
  return verify_kkt(pi.entries(), mu, nu, tols, support_threshold);
}

}  // namespace ioc
