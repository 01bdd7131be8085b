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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "ioc/couplings.hpp"
#include "ioc/errors.hpp"
#include "ioc/solver.hpp"
#include "support/generators.hpp"

using ioc::Marginal;
using ioc::Matrix;

namespace {

Marginal margins(std::vector<double> w) {
  return Marginal::from_weights(w);
}

}  // namespace

TEST_CASE("leading zero index") {
  // Worked 2 x 2 case: zeroing one entry suffices.
  CHECK(ioc::leading_zero_index(Matrix::from_rows({{-0.15, 0.25}}), 0) == 1);
  // Nonnegative first entry means nothing to zero.
  CHECK(ioc::leading_zero_index(Matrix::from_rows({{0.15, 0.25}}), 0) == 0);
  // Two entries must go: spreading over the remainder only works from 2 on.
  CHECK(ioc::leading_zero_index(Matrix::from_rows({{-0.3, -0.1, 0.5}}), 0) ==
        2);
}

TEST_CASE("a nonpositive row total has no admissible index") {
  CHECK_THROWS_AS(
      ioc::leading_zero_index(Matrix::from_rows({{-0.5, -0.5}}), 0),
      ioc::NoAdmissibleIndexError);
}

TEST_CASE("single-row problems are already solved") {
  const auto point = Marginal::uniform(1);
  const auto nu = margins({0.3, 0.7});
  const auto sol = ioc::solve(point, nu);
  CHECK(sol.productive_iterations == 0);
  CHECK(sol.pi_star(0, 0) == doctest::Approx(0.3));
  CHECK(sol.pi_star(0, 1) == doctest::Approx(0.7));
  CHECK(ioc::verify_kkt(sol, point, nu).valid);
}

TEST_CASE("one repair step on the worked 2 x 2 case") {
  const auto m19 = margins({0.1, 0.9});
  auto state = ioc::make_initial_state(m19, m19);
  CHECK(state.m(0, 0) == doctest::Approx(-0.15));
  CHECK(ioc::has_negative_entry(state));

  state = ioc::one_step(std::move(state));
  CHECK(state.current_row == 1);
  CHECK(state.m(0, 0) == doctest::Approx(0.0));
  CHECK(state.m(0, 1) == doctest::Approx(0.10));
  CHECK(state.m(1, 0) == doctest::Approx(0.10));
  CHECK(state.m(1, 1) == doctest::Approx(0.80));
  // -(-0.15) three more times over the three unit denominators
  CHECK(state.r(0, 0) == doctest::Approx(0.60));
  CHECK(state.r(0, 1) == 0.0);
  CHECK(state.r(1, 0) == 0.0);
  CHECK(state.r(1, 1) == 0.0);
  CHECK_FALSE(ioc::has_negative_entry(state));
  state.check_invariants();
}

TEST_CASE("a nonnegative row is skipped untouched") {
  const auto m46 = margins({0.4, 0.6});
  auto state = ioc::make_initial_state(m46, m46);
  const Matrix before_m = state.m;
  const Matrix before_r = state.r;
  state = ioc::one_step(std::move(state));
  CHECK(state.current_row == 1);
  CHECK(ioc::max_abs_difference(state.m, before_m) == 0.0);
  CHECK(ioc::max_abs_difference(state.r, before_r) == 0.0);
}

TEST_CASE("stepping past the last row is an invariant violation") {
  const auto u2 = Marginal::uniform(2);
  auto state = ioc::make_initial_state(u2, u2);
  state = ioc::one_step(std::move(state));
  state = ioc::one_step(std::move(state));
  CHECK(state.current_row == 2);
  CHECK_THROWS_AS(ioc::one_step(std::move(state)),
                  ioc::InvariantViolationError);
}

TEST_CASE("feasible margins solve in zero productive iterations") {
  const auto m46 = margins({0.4, 0.6});
  const auto sol = ioc::solve(m46, m46);
  CHECK(sol.productive_iterations == 0);
  const auto plus = ioc::indeterminacy_coupling(m46, m46);
  CHECK(ioc::max_abs_difference(sol.pi_star.entries(), plus.entries()) <=
        1e-15);
  CHECK(sol.multipliers.min_entry() == 0.0);
  CHECK(ioc::verify_kkt(sol, m46, m46).valid);
}

TEST_CASE("the worked infeasible case solves exactly") {
  const auto m19 = margins({0.1, 0.9});
  ioc::SolveOptions opts;
  opts.record_trace = true;
  const auto sol = ioc::solve(m19, m19, opts);
  CHECK(sol.productive_iterations == 1);
  CHECK(sol.pi_star(0, 0) == 0.0);
  CHECK(sol.pi_star(0, 1) == doctest::Approx(0.1));
  CHECK(sol.pi_star(1, 0) == doctest::Approx(0.1));
  CHECK(sol.pi_star(1, 1) == doctest::Approx(0.8));
  CHECK(ioc::index_of_coincidence(sol.pi_star) == doctest::Approx(0.66));
  REQUIRE(sol.trace.size() == 1);
  CHECK(sol.trace[0].row == 0);
  CHECK(sol.trace[0].zero_count == 1);
  CHECK(sol.trace[0].mass == doctest::Approx(-0.15));
  CHECK(ioc::verify_kkt(sol, m19, m19).valid);
}

TEST_CASE("a two-level staircase instance, worked by hand") {
  // Two repair steps with zero counts 2 then 1; the zero set is a genuine
  // staircase, not a rectangle.
  const auto mu = margins({0.05, 0.3, 0.65});
  const auto nu = margins({0.02, 0.3, 0.68});
  const auto sol = ioc::solve(mu, nu);
  CHECK(sol.productive_iterations == 2);
  const auto want = Matrix::from_rows({{0.0, 0.0, 0.05},
                                       {0.0, 0.0675, 0.2325},
                                       {0.02, 0.2325, 0.3975}});
  CHECK(ioc::max_abs_difference(sol.pi_star.entries(), want) <= 1e-12);
  CHECK(ioc::verify_kkt(sol, mu, nu).valid);
  CHECK(ioc::zero_prefix_counts(sol.pi_star.entries()) ==
        std::vector{2, 1, 0});
}

TEST_CASE("uniform margins give the uniform table") {
  const auto u3 = Marginal::uniform(3);
  const auto sol = ioc::solve(u3, u3);
  CHECK(sol.productive_iterations == 0);
  CHECK(ioc::max_abs_difference(sol.pi_star.entries(),
                                Matrix(3, 3, 1.0 / 9)) <= 1e-15);
  CHECK(ioc::index_of_coincidence(sol.pi_star) == doctest::Approx(1.0 / 9));
}

TEST_CASE("certificate rejects the product coupling of skewed margins") {
  const auto m = margins({0.2, 0.8});
  const auto n = margins({0.3, 0.7});
  ioc::Solution hand;
  hand.pi_star = ioc::independence_coupling(m, n);
  hand.multipliers = Matrix(2, 2);
  hand.lambda = {m.weight(0) / 2, m.weight(1) / 2};
  hand.omega = {n.weight(0) / 2, n.weight(1) / 2};
  hand.theta = -0.25;
  const auto cert = ioc::verify_kkt(hand, m, n);
  CHECK_FALSE(cert.valid);
  CHECK(cert.max_stationarity_residual > 1e-3);
  // feasibility is fine; only stationarity breaks
  CHECK(cert.max_marginal_residual <= 1e-10);
  CHECK(cert.max_negative_entry == 0.0);
}

TEST_CASE("certificate accepts the uniform solution with flat shifts") {
  const auto u = Marginal::uniform(3);
  ioc::Solution hand;
  hand.pi_star = ioc::independence_coupling(u, u);
  hand.multipliers = Matrix(3, 3);
  hand.lambda.assign(3, 1.0 / 9);
  hand.omega.assign(3, 1.0 / 9);
  hand.theta = -1.0 / 9;
  CHECK(ioc::verify_kkt(hand, u, u).valid);
}

TEST_CASE("random instances: structure, certificate, termination") {
  ioc::RandomStream rng(2024);
  int infeasible_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto [mu, nu] = ioc_test::random_pair(rng, 2, 9);
    const auto sol = ioc::solve(mu, nu);  // invariant checks on by default
    const auto& pi = sol.pi_star.entries();

    CHECK(sol.productive_iterations <= mu.size() - 1);
    CHECK(ioc::is_monotone(pi));
    CHECK(ioc::is_zero_staircase(pi));
    CHECK(ioc::verify_kkt(sol, mu, nu).valid);
    if (!ioc::condition_h(mu, nu)) ++infeasible_seen;

    // Any margin-preserving rearrangement can only increase the objective.
    const double best = ioc::index_of_coincidence(pi);
    for (int k = 0; k < 20; ++k) {
      const auto other = ioc_test::random_feasible_perturbation(pi, rng);
      CHECK(ioc::index_of_coincidence(other) >= best - 1e-9);
    }
  }
  CHECK(infeasible_seen > 100);  // the generic case dominates
}

TEST_CASE("row repair can only widen later zero indices up to its own") {
  // A step at row l adds value_l(z)/below, which is negative for z below
  // the step's zero count, to the admissibility value of every lower row;
  // the value at the zero count itself is untouched. So later zero
  // indices never shrink and never pass the count of the step just taken.
  ioc::RandomStream rng(5150);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [mu, nu] = ioc_test::random_pair(rng, 3, 9);
    auto state = ioc::make_initial_state(mu, nu);
    while (ioc::has_negative_entry(state)) {
      const int l = state.current_row;
      REQUIRE(l < state.m.rows());
      const bool transforming = [&] {
        for (int v = 0; v < state.m.cols(); ++v)
          if (state.m(l, v) < -1e-12) return true;
        return false;
      }();
      const int step_count =
          transforming ? ioc::leading_zero_index(state.m, l) : 0;
      std::vector<int> before;
      for (int u = l + 1; u < state.m.rows(); ++u)
        before.push_back(ioc::leading_zero_index(state.m, u));
      state = ioc::one_step(std::move(state));
      int previous = state.m.cols();
      for (int u = l + 1; u < state.m.rows(); ++u) {
        const int after = ioc::leading_zero_index(state.m, u);
        const int old = before[static_cast<std::size_t>(u - l - 1)];
        CHECK(after >= old);
        if (transforming) CHECK(after <= step_count);
        CHECK(after <= previous);  // still non-increasing down the rows
        previous = after;
      }
      // marginals survive each step, not just the whole run
      for (int u = 0; u < state.m.rows(); ++u)
        CHECK(std::abs(state.m.row_sum(u) - state.mu[u]) <= 1e-10);
      for (int v = 0; v < state.m.cols(); ++v)
        CHECK(std::abs(state.m.col_sum(v) - state.nu[v]) <= 1e-10);
    }
  }
}

TEST_CASE("the zero set is exactly the traced staircase") {
  ioc::RandomStream rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [mu, nu] = ioc_test::random_pair(rng, 2, 8);
    ioc::SolveOptions opts;
    opts.record_trace = true;
    const auto sol = ioc::solve(mu, nu, opts);
    const auto counts = ioc::zero_prefix_counts(sol.pi_star.entries());
    // Rows touched by a productive step keep the zero count it assigned.
    for (const auto& step : sol.trace)
      CHECK(counts[step.row] == step.zero_count);
    // Multipliers live exactly on the zero cells.
    for (int u = 0; u < sol.pi_star.rows(); ++u)
      for (int v = 0; v < sol.pi_star.cols(); ++v) {
        if (sol.multipliers(u, v) > 0.0)
          CHECK(sol.pi_star(u, v) == 0.0);
        CHECK(sol.multipliers(u, v) >= 0.0);
      }
  }
}
