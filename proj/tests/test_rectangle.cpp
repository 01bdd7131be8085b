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
#include "ioc/rectangle.hpp"
#include "ioc/solver.hpp"
#include "support/generators.hpp"

using ioc::Marginal;
using ioc::RectangleCorner;

namespace {

ioc::SignedMatrix plus_of(std::vector<double> mw, std::vector<double> nw) {
  return ioc::indeterminacy_coupling(Marginal::from_weights(mw),
                                     Marginal::from_weights(nw));
}

}  // namespace

TEST_CASE("corner of the candidate zero block") {
  CHECK(ioc::corner(plus_of({0.4, 0.6}, {0.4, 0.6})) ==
        RectangleCorner{0, 0});
  CHECK(ioc::corner(plus_of({0.1, 0.9}, {0.1, 0.9})) ==
        RectangleCorner{1, 1});
  // Skewed second margin alone does not break feasibility here.
  CHECK(ioc::corner(plus_of({1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.1, 0.9})) ==
        RectangleCorner{0, 0});
}

TEST_CASE("mass bookkeeping over the rectangle") {
  const auto plus = plus_of({0.1, 0.9}, {0.1, 0.9});

  const auto d11 = ioc::deltas(plus, {1, 1});
  CHECK(d11.delta_rows == std::vector{-0.15});
  CHECK(d11.delta_cols == std::vector{-0.15});
  CHECK(d11.delta_total == doctest::Approx(-0.15));

  const auto d00 = ioc::deltas(plus, {0, 0});
  CHECK(d00.delta_rows.empty());
  CHECK(d00.delta_cols.empty());
  CHECK(d00.delta_total == 0.0);

  // Full-matrix corner sums the whole table; pure arithmetic identity.
  const auto dfull = ioc::deltas(plus, {2, 2});
  CHECK(dfull.delta_total == doctest::Approx(1.0));
}

TEST_CASE("aggregated multiplier sums in closed form") {
  const auto plus = plus_of({0.1, 0.9}, {0.1, 0.9});
  const auto d = ioc::deltas(plus, {1, 1});
  const auto agg = ioc::aggregates(d, {1, 1}, 2, 2);
  CHECK(agg.total == doctest::Approx(0.60));
  CHECK(agg.row_sums[0] == doctest::Approx(0.60));
  CHECK(agg.row_sums[1] == 0.0);
  CHECK(agg.col_sums[0] == doctest::Approx(0.60));

  const auto none = ioc::aggregates(ioc::deltas(plus, {0, 0}), {0, 0}, 2, 2);
  CHECK(none.total == 0.0);
  for (double x : none.row_sums) CHECK(x == 0.0);

  CHECK_THROWS_AS(ioc::aggregates(ioc::deltas(plus, {2, 2}), {2, 2}, 2, 2),
                  ioc::DegenerateCornerError);
  CHECK_THROWS_AS(ioc::multiplier_field(plus, d, {2, 1}),
                  ioc::DegenerateCornerError);
}

TEST_CASE("entrywise multiplier field") {
  const auto plus = plus_of({0.1, 0.9}, {0.1, 0.9});
  const auto d = ioc::deltas(plus, {1, 1});
  const auto r = ioc::multiplier_field(plus, d, {1, 1});
  CHECK(r(0, 0) == doctest::Approx(0.60));
  CHECK(r(0, 1) == 0.0);
  CHECK(r(1, 0) == 0.0);
  CHECK(r(1, 1) == 0.0);
}

TEST_CASE("aggregates equal the sums of the multiplier field") {
  ioc::RandomStream rng(31);
  int rectangles = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto [mu, nu] = ioc_test::random_pair(rng, 2, 7);
    const auto plus = ioc::indeterminacy_coupling(mu, nu);
    const auto c = ioc::corner(plus);
    if (c.empty() || c.p1 >= mu.size() || c.q1 >= nu.size()) continue;
    ++rectangles;
    const auto d = ioc::deltas(plus, c);
    const auto agg = ioc::aggregates(d, c, mu.size(), nu.size());
    const auto r = ioc::multiplier_field(plus, d, c);

    double row_total = 0.0, col_total = 0.0;
    for (int u = 0; u < mu.size(); ++u) {
      CHECK(std::abs(r.row_sum(u) - agg.row_sums[u]) <= 1e-12);
      row_total += agg.row_sums[u];
    }
    for (int v = 0; v < nu.size(); ++v) {
      CHECK(std::abs(r.col_sum(v) - agg.col_sums[v]) <= 1e-12);
      col_total += agg.col_sums[v];
    }
    CHECK(std::abs(row_total - agg.total) <= 1e-12);
    CHECK(std::abs(col_total - agg.total) <= 1e-12);

    // Inside the block the field decreases along both directions.
    for (int u = 0; u + 1 < c.p1; ++u)
      for (int v = 0; v < c.q1; ++v) CHECK(r(u + 1, v) <= r(u, v) + 1e-12);
    for (int u = 0; u < c.p1; ++u)
      for (int v = 0; v + 1 < c.q1; ++v) CHECK(r(u, v + 1) <= r(u, v) + 1e-12);

    // The block covers every nonpositive entry of the balanced coupling.
    int neg_rows = 0, neg_cols = 0;
    while (neg_rows < mu.size() && plus(neg_rows, 0) <= 0.0) ++neg_rows;
    while (neg_cols < nu.size() && plus(0, neg_cols) <= 0.0) ++neg_cols;
    CHECK(c.p1 >= neg_rows);
    CHECK(c.q1 >= neg_cols);
  }
  CHECK(rectangles > 200);
}

TEST_CASE("closed form equals the worked solution") {
  const auto plus = plus_of({0.1, 0.9}, {0.1, 0.9});
  const auto tilde = ioc::pi_tilde(plus, ioc::corner(plus));
  CHECK(tilde(0, 0) == 0.0);
  CHECK(std::abs(tilde(0, 1) - 0.1) <= 1e-12);
  CHECK(std::abs(tilde(1, 0) - 0.1) <= 1e-12);
  CHECK(std::abs(tilde(1, 1) - 0.8) <= 1e-12);
}

TEST_CASE("closed form is the identity on feasible margins") {
  const auto plus = plus_of({0.4, 0.6}, {0.4, 0.6});
  const auto tilde = ioc::pi_tilde(plus, ioc::corner(plus));
  CHECK(ioc::max_abs_difference(tilde.entries(), plus.entries()) == 0.0);
}

TEST_CASE("wrong corners are refused") {
  const auto plus = plus_of({0.1, 0.9}, {0.1, 0.9});
  // Claiming no zero block while entries are negative cannot produce a
  // coupling.
  CHECK_THROWS_AS(ioc::pi_tilde(plus, {0, 0}), ioc::NotEligibleError);
  // A block that misses the negative column fails nonnegativity too.
  CHECK_THROWS_AS(ioc::pi_tilde(plus, {1, 0}), ioc::NotEligibleError);
}

TEST_CASE("mass redistribution accounting per region") {
  ioc::RandomStream rng(67);
  int seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto [mu, nu] = ioc_test::random_pair(rng, 2, 7);
    const auto plus = ioc::indeterminacy_coupling(mu, nu);
    const auto c = ioc::corner(plus);
    if (c.empty()) continue;
    const auto d = ioc::deltas(plus, c);
    ioc::Coupling tilde;
    try {
      tilde = ioc::pi_tilde(plus, c);
    } catch (const ioc::NotEligibleError&) {
      continue;  // not a single-rectangle instance
    }
    ++seen;
    const int p = mu.size(), q = nu.size();
    double upper_right = 0.0, lower_left = 0.0, lower_right = 0.0;
    for (int u = 0; u < p; ++u)
      for (int v = 0; v < q; ++v) {
        const double change = tilde(u, v) - plus(u, v);
        if (u < c.p1 && v >= c.q1) upper_right += change;
        if (u >= c.p1 && v < c.q1) lower_left += change;
        if (u >= c.p1 && v >= c.q1) lower_right += change;
      }
    CHECK(std::abs(upper_right - d.delta_total) <= 1e-12);
    CHECK(std::abs(lower_left - d.delta_total) <= 1e-12);
    CHECK(std::abs(lower_right + d.delta_total) <= 1e-12);
  }
  CHECK(seen > 100);
}

TEST_CASE("closed form matches the solver on rectangle instances") {
  ioc::RandomStream rng(4242);
  int matched = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto [mu, nu] = ioc_test::random_pair(rng, 2, 6);
    const auto sol = ioc::solve(mu, nu);
    const auto detected = ioc::detect_rectangle(sol.pi_star.entries());
    if (!detected || detected->empty()) continue;
    ++matched;
    const auto plus = ioc::indeterminacy_coupling(mu, nu);
    CHECK(ioc::corner(plus) == *detected);
    const auto tilde = ioc::pi_tilde(plus, *detected);
    CHECK(ioc::max_abs_difference(tilde.entries(), sol.pi_star.entries()) <=
          1e-9);
    // The block mass is nonpositive at a corner the solver confirms.
    CHECK(ioc::deltas(plus, *detected).delta_total <= 1e-12);
  }
  CHECK(matched > 100);
}

TEST_CASE("rectangle detection on computed couplings") {
  using ioc::Matrix;
  CHECK(ioc::detect_rectangle(Matrix(2, 2, 0.25)) == RectangleCorner{0, 0});
  CHECK(ioc::detect_rectangle(Matrix::from_rows(
            {{0.0, 0.1}, {0.1, 0.8}})) == RectangleCorner{1, 1});
  // Two distinct zero-run lengths: a staircase, not a rectangle.
  CHECK(ioc::detect_rectangle(Matrix::from_rows({{0.0, 0.0, 0.2},
                                                 {0.0, 0.2, 0.2},
                                                 {0.1, 0.15, 0.15}})) ==
        std::nullopt);
}
