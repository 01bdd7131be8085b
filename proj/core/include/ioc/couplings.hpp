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

#include <vector>

#include "ioc/matrix.hpp"

namespace ioc {

/// Product coupling: entry (u, v) is mu_u * nu_v.
Coupling independence_coupling(const Marginal& mu, const Marginal& nu);

/// Balanced coupling: entry (u, v) is mu_u/q + nu_v/p - 1/(pq).
///
/// Satisfies every equality constraint of the transportation polytope for
/// any margins, but may contain negative entries; hence it is returned as
/// a SignedMatrix, not a Coupling.
SignedMatrix indeterminacy_coupling(const Marginal& mu, const Marginal& nu);

/// Collision probability of a joint table: the sum of squared entries.
double index_of_coincidence(const Matrix& m);
double index_of_coincidence(const SignedMatrix& m);
double index_of_coincidence(const Coupling& c);

/// Margin feasibility test: true iff mu_min/q + nu_min/p - 1/(pq) >= -1e-12,
/// which is exactly when the balanced coupling is nonnegative (and optimal).
bool condition_h(const Marginal& mu, const Marginal& nu);

/// Scalar form of the same test on the two minimum weights; the Monte
/// Carlo estimator uses this to avoid building Marginal objects per draw.
bool condition_h_min(double mu_min, int p, double nu_min, int q);

/// True iff entries are nondecreasing along every row and every column
/// (comparisons slack by 1e-12).
bool is_monotone(const Matrix& m);
bool is_monotone(const SignedMatrix& m);

/// Number of leading entries <= eps in each row.
std::vector<int> zero_prefix_counts(const Matrix& m,
                                    double eps = tol::kSignEps);

/// True iff the set of entries <= eps is exactly a down-left staircase:
/// every zero lies in a leading run and the run lengths are non-increasing
/// from the first row down.
bool is_zero_staircase(const Matrix& m, double eps = tol::kSignEps);

}  // namespace ioc
