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
#include "ioc/oracle.hpp"
#include "ioc/solver.hpp"
#include "support/generators.hpp"

using ioc::Marginal;

TEST_CASE("uniform margins project onto the uniform table") {
  const auto u2 = Marginal::uniform(2);
  const auto c = ioc::project_uniform(u2, u2);
  CHECK(ioc::max_abs_difference(c.entries(), ioc::Matrix(2, 2, 0.25)) <=
        1e-10);
}

TEST_CASE("feasible margins project onto the balanced coupling") {
  const auto m = Marginal::from_weights(std::vector{0.4, 0.6});
  const auto c = ioc::project_uniform(m, m);
  CHECK(ioc::max_abs_difference(
            c.entries(), ioc::indeterminacy_coupling(m, m).entries()) <=
        1e-8);
}

TEST_CASE("the worked infeasible case projects onto the repaired table") {
  const auto m = Marginal::from_weights(std::vector{0.1, 0.9});
  const auto c = ioc::project_uniform(m, m);
  const auto want = ioc::Matrix::from_rows({{0.0, 0.1}, {0.1, 0.8}});
  CHECK(ioc::max_abs_difference(c.entries(), want) <= 1e-8);
}

TEST_CASE("projection agrees with the constructive solver") {
  ioc::RandomStream rng(271828);
  for (int trial = 0; trial < 60; ++trial) {
    const auto [mu, nu] = ioc_test::random_pair(rng, 2, 6);
    const auto sol = ioc::solve(mu, nu);
    const auto proj = ioc::project_uniform(mu, nu);
    CHECK(ioc::max_abs_difference(proj.entries(), sol.pi_star.entries()) <=
          1e-6);
    CHECK(std::abs(ioc::index_of_coincidence(proj) -
                   ioc::index_of_coincidence(sol.pi_star)) <= 1e-8);

    // Recovered multipliers certify the projected table at relaxed
    // tolerances.
    const auto cert =
        ioc::verify_kkt(proj.matrix(), mu, nu,
                        ioc::CertificateTolerances::relaxed(1e-6));
    CHECK(cert.valid);
  }
}

TEST_CASE("iteration budget is enforced") {
  const auto m = Marginal::from_weights(std::vector{0.1, 0.9});
  ioc::OracleConfig cfg;
  cfg.max_iterations = 2;
  CHECK_THROWS_AS(ioc::project_uniform(m, m, cfg), ioc::NoConvergenceError);
}

TEST_CASE("config is validated") {
  const auto u2 = Marginal::uniform(2);
  ioc::OracleConfig bad;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(ioc::project_uniform(u2, u2, bad),
                  ioc::InvariantViolationError);
  bad.tolerance = 1e-10;
  bad.max_iterations = 0;
  CHECK_THROWS_AS(ioc::project_uniform(u2, u2, bad),
                  ioc::InvariantViolationError);
}
