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

#include "ioc/matrix.hpp"

namespace ioc {

struct OracleConfig {
  double tolerance = 1e-10;
  int max_iterations = 200000;
};

/// Euclidean projection of the uniform p x q table onto the transportation
/// polytope of (mu, nu), computed by Dykstra's alternating projections with
/// correction memory over three sets: the row-sum affine set, the
/// column-sum affine set, and the nonnegative orthant, cycled in that
/// order. Plain cyclic projection would only reach a feasible point; the
/// correction terms are what make the limit the projection itself.
///
/// This is the brute-force cross-check for the constructive solver; it is
/// deliberately independent of it. Stops when both the entrywise change
/// over a full cycle and the marginal residual fall below cfg.tolerance;
/// throws NoConvergenceError when cfg.max_iterations cycles do not get
/// there. Output is in sorted order.
Coupling project_uniform(const Marginal& mu, const Marginal& nu,
                         const OracleConfig& cfg = {});

}  // namespace ioc
