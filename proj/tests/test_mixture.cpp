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
#include "ioc/mixture.hpp"
#include "support/generators.hpp"

using ioc::Marginal;

namespace {

double tv_distance(const ioc::Matrix& a, const ioc::Matrix& b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    total += std::abs(a.data()[i] - b.data()[i]);
  return total / 2.0;
}

}  // namespace

TEST_CASE("uniform margins leave only the uniform component") {
  const auto u2 = Marginal::uniform(2);
  const auto d = ioc::decompose(u2, u2);
  CHECK(d.row_weight == 0.0);
  CHECK(d.col_weight == 0.0);
  CHECK(d.uniform_weight == doctest::Approx(1.0));
  CHECK_FALSE(d.row_residual.has_value());
  CHECK_FALSE(d.col_residual.has_value());

  ioc::RandomStream rng(3);
  ioc::Matrix counts(2, 2);
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const auto [u, v] = ioc::draw(d, rng);
    counts(u, v) += 1.0 / draws;
  }
  CHECK(tv_distance(counts, ioc::Matrix(2, 2, 0.25)) <= 0.01);
}

TEST_CASE("worked decomposition of skewed feasible margins") {
  const auto m = Marginal::from_weights(std::vector{0.4, 0.6});
  const auto d = ioc::decompose(m, m);
  CHECK(d.row_weight == doctest::Approx(0.2));
  CHECK(d.col_weight == doctest::Approx(0.2));
  CHECK(d.uniform_weight == doctest::Approx(0.6));
  REQUIRE(d.row_residual.has_value());
  CHECK((*d.row_residual)[0] == doctest::Approx(0.0));
  CHECK((*d.row_residual)[1] == doctest::Approx(1.0));

  const auto plus = ioc::indeterminacy_coupling(m, m);
  CHECK(ioc::max_abs_difference(ioc::reconstruct(d), plus.entries()) <=
        1e-15);
}

TEST_CASE("boundary margins lose the uniform component") {
  // p mu_min + q nu_min - 1 = 0 exactly for (0.25, 0.75) against itself.
  const auto m = Marginal::from_weights(std::vector{0.25, 0.75});
  const auto d = ioc::decompose(m, m);
  CHECK(d.uniform_weight == 0.0);
  CHECK(d.row_weight == doctest::Approx(0.5));
  CHECK(d.col_weight == doctest::Approx(0.5));
}

TEST_CASE("infeasible margins cannot be decomposed") {
  const auto m = Marginal::from_weights(std::vector{0.1, 0.9});
  CHECK_THROWS_AS(ioc::decompose(m, m), ioc::ConditionHViolatedError);
}

TEST_CASE("reconstruction identity on random feasible pairs") {
  ioc::RandomStream rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    const int p = 1 + rng.uniform_int(8);
    const int q = 1 + rng.uniform_int(8);
    const auto [mu, nu] =
        ioc::eligible_pair(ioc_test::random_recipe(rng, p, q));
    const auto d = ioc::decompose(mu, nu);

    CHECK(d.row_weight >= 0.0);
    CHECK(d.col_weight >= 0.0);
    CHECK(d.uniform_weight >= 0.0);
    CHECK(std::abs(d.row_weight + d.col_weight + d.uniform_weight - 1.0) <=
          1e-12);

    const auto plus = ioc::indeterminacy_coupling(mu, nu);
    CHECK(ioc::max_abs_difference(ioc::reconstruct(d), plus.entries()) <=
          1e-12);
  }
}

TEST_CASE("draws reproduce the balanced coupling with its components") {
  const auto mu = Marginal::from_weights(std::vector{0.3, 0.3, 0.4});
  const auto nu = Marginal::from_weights(std::vector{0.45, 0.55});
  const auto d = ioc::decompose(mu, nu);
  const auto plus = ioc::indeterminacy_coupling(mu, nu);

  ioc::RandomStream rng(2718);
  const int draws = 200000;
  ioc::Matrix joint(3, 2);
  std::vector<double> row_given_first(3, 0.0);
  double first_total = 0.0;
  for (int i = 0; i < draws; ++i) {
    const auto full = ioc::draw_detailed(d, rng);
    joint(full.row, full.col) += 1.0 / draws;
    if (full.component == 1) {
      row_given_first[full.row] += 1.0;
      first_total += 1.0;
    }
  }
  CHECK(tv_distance(joint, plus.entries()) <= 0.01);

  // Conditioned on the first component, rows follow its residual law.
  REQUIRE(d.row_residual.has_value());
  REQUIRE(first_total > 0);
  double cond_tv = 0.0;
  for (int u = 0; u < 3; ++u)
    cond_tv +=
        std::abs(row_given_first[u] / first_total - (*d.row_residual)[u]);
  CHECK(cond_tv / 2.0 <= 0.01);

  // Same seed, same draws.
  ioc::RandomStream replay_a(9), replay_b(9);
  for (int i = 0; i < 100; ++i)
    CHECK(ioc::draw(d, replay_a) == ioc::draw(d, replay_b));
}
