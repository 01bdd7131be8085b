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

#include "ioc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ioc/errors.hpp"

namespace ioc {

namespace {

double worst_marginal_residual(const Matrix& x, const std::vector<double>& mu,
                               const std::vector<double>& nu) {
  double worst = std::abs(x.sum() - 1.0);
  for (int u = 0; u < x.rows(); ++u)
    worst = std::max(worst, std::abs(x.row_sum(u) - mu[u]));
  for (int v = 0; v < x.cols(); ++v)
    worst = std::max(worst, std::abs(x.col_sum(v) - nu[v]));
  return worst;
}

}  // namespace

Coupling project_uniform(const Marginal& mu, const Marginal& nu,
                         const OracleConfig& cfg) {
  if (!(cfg.tolerance > 0.0) || cfg.max_iterations < 1)
    throw InvariantViolationError("oracle config must have tolerance > 0 and "
                                  "at least one iteration");
  const int p = mu.size(), q = nu.size();
  const std::vector<double>& m = mu.weights();
  const std::vector<double>& n = nu.weights();
  // A Coupling requires marginal residuals within 1e-10, so never stop
  // looser than that even if the caller asked for less.
  const double stop_tol = std::min(cfg.tolerance, tol::kMarginalTol);

  Matrix x(p, q, 1.0 / (static_cast<double>(p) * q));
  // One correction matrix per constraint set, all starting at zero.
  Matrix inc_rows(p, q), inc_cols(p, q), inc_sign(p, q);
  Matrix previous = x;

  for (int cycle = 0; cycle < cfg.max_iterations; ++cycle) {
    // Row-sum affine set.
    for (int u = 0; u < p; ++u) {
      double s = 0.0;
      for (int v = 0; v < q; ++v) {
        x(u, v) += inc_rows(u, v);
        s += x(u, v);
      }
      const double shift = (m[u] - s) / q;
      for (int v = 0; v < q; ++v) {
        const double y = x(u, v) + shift;
        inc_rows(u, v) = x(u, v) - y;
        x(u, v) = y;
      }
    }
    // Column-sum affine set.
    for (int v = 0; v < q; ++v) {
      double s = 0.0;
      for (int u = 0; u < p; ++u) {
        x(u, v) += inc_cols(u, v);
        s += x(u, v);
      }
      const double shift = (n[v] - s) / p;
      for (int u = 0; u < p; ++u) {
        const double y = x(u, v) + shift;
        inc_cols(u, v) = x(u, v) - y;
        x(u, v) = y;
      }
    }
    // Nonnegative orthant.
    for (int u = 0; u < p; ++u)
      for (int v = 0; v < q; ++v) {
        const double z = x(u, v) + inc_sign(u, v);
        const double y = std::max(0.0, z);
        inc_sign(u, v) = z - y;
        x(u, v) = y;
      }

    const double moved = max_abs_difference(x, previous);
    if (moved <= stop_tol &&
        worst_marginal_residual(x, m, n) <= stop_tol) {
      return Coupling::from_matrix(SignedMatrix(std::move(x), m, n),
                                   cfg.tolerance, tol::kMarginalTol);
    }
    previous = x;
  }
  throw NoConvergenceError("projection did not reach tolerance " +
                           std::to_string(cfg.tolerance) + " within " +
                           std::to_string(cfg.max_iterations) + " cycles");
}

}  // namespace ioc
