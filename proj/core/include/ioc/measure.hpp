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

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "ioc/marginal.hpp"
#include "ioc/random_stream.hpp"

namespace ioc {

/// Fraction of the simplex (or product of simplices) whose margins admit
/// the nonnegative balanced coupling, estimated by Monte Carlo.
struct ProportionEstimate {
  double estimate = 0.0;
  double std_error = 0.0;  // sqrt(estimate * (1 - estimate) / n_samples)
  std::int64_t n_samples = 0;
  std::optional<double> analytic;
};

enum class ProportionMode {
  kSelf,  // draw one margin mu, test the pair (mu, mu)
  kPair,  // draw mu and nu independently
};

/// Measure of margins mu whose self-pair (mu, mu) is feasible: 1/2^(p-1).
double self_coupling_proportion(int p);

/// Measure of independently drawn feasible pairs:
/// (p-1)! (q-1)! / (p+q-2)!, evaluated through log-gamma so large
/// dimensions do not overflow.
double pair_proportion(int p, int q);

/// Uniform (flat Dirichlet) draw from the n-point simplex via normalized
/// exponentials. Exact zero coordinates are a null event and are retried.
Marginal sample_simplex(int n, RandomStream& rng);

/// Monte Carlo estimate of the feasible-margin proportion, with the
/// analytic value attached. Samples may be sharded over `shards` worker
/// threads using split substreams; the result is deterministic for a fixed
/// (stream seed, shard count). q is ignored in self mode.
ProportionEstimate estimate_proportion(int p, int q, ProportionMode mode,
                                       std::int64_t n_samples,
                                       const RandomStream& base,
                                       int shards = 1);

/// Constructive recipe for a feasible pair: mixing weight alpha in [0, 1]
/// and two base distributions (sizes p and q).
struct EligiblePairRecipe {
  double alpha = 0.5;
  std::vector<double> row_base;  // probability vector on p points
  std::vector<double> col_base;  // probability vector on q points
};

/// Builds mu_u = alpha/p + (1-alpha) r_u and nu_v = (1-alpha)/q + alpha s_v.
/// Every output pair is feasible. Throws ZeroWeightError when an endpoint
/// alpha meets a zero base coordinate, which would produce a zero weight.
std::pair<Marginal, Marginal> eligible_pair(const EligiblePairRecipe& recipe);

/// Builds mu_u = 1/(2p) + r_u/2 from a probability vector r; the pair
/// (mu, mu) is always feasible.
Marginal eligible_self(std::span<const double> base);

/// Mixing weight alpha = p * mu_min when the pair is feasible, absent
/// otherwise. Presence is equivalent to the margin feasibility condition.
std::optional<double> alpha_of(const Marginal& mu, const Marginal& nu);

}  // namespace ioc
