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

#include "ioc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "ioc/couplings.hpp"
#include "ioc/errors.hpp"
#include "ioc/tolerances.hpp"

namespace ioc {

double self_coupling_proportion(int p) {
  if (p < 1) throw EmptyMarginalError("dimension must be at least 1");
  return std::exp2(-(p - 1));
}

double pair_proportion(int p, int q) {
  if (p < 1 || q < 1) throw EmptyMarginalError("dimensions must be at least 1");
  // (p-1)! (q-1)! / (p+q-2)! through log-gamma; the factorials overflow
  // doubles past p+q-2 = 170.
  return std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q - 1));
}

Marginal sample_simplex(int n, RandomStream& rng) {
  if (n < 1) throw EmptyMarginalError("dimension must be at least 1");
  std::vector<double> w(n);
  for (;;) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      w[i] = rng.exponential();
      total += w[i];
    }
    bool interior = total > 0.0;
    for (int i = 0; i < n && interior; ++i) {
      w[i] /= total;
      interior = w[i] > 0.0;
    }
    if (interior) break;  // zero coordinates are a null event; redraw
  }
  // Normalized positive draws sum to 1 to machine precision.
  return Marginal::from_weights(w);
}

namespace {

// Minimum coordinate of a flat Dirichlet draw; same distribution as
// sample_simplex but with a reused buffer, since the eligibility test
// only needs the minima.
double simplex_min(int n, RandomStream& rng, std::vector<double>& buf) {
  for (;;) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      buf[i] = rng.exponential();
      total += buf[i];
    }
    if (!(total > 0.0)) continue;
    double lo = buf[0];
    for (int i = 1; i < n; ++i) lo = std::min(lo, buf[i]);
    lo /= total;
    if (lo > 0.0) return lo;
  }
}

std::int64_t count_eligible(int p, int q, ProportionMode mode,
                            std::int64_t samples, RandomStream rng) {
  std::vector<double> buf(std::max(p, q));
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    const double mu_min = simplex_min(p, rng, buf);
    if (mode == ProportionMode::kSelf) {
      hits += condition_h_min(mu_min, p, mu_min, p) ? 1 : 0;
    } else {
      const double nu_min = simplex_min(q, rng, buf);
      hits += condition_h_min(mu_min, p, nu_min, q) ? 1 : 0;
    }
  }
  return hits;
}

}  // namespace

ProportionEstimate estimate_proportion(int p, int q, ProportionMode mode,
                                       std::int64_t n_samples,
                                       const RandomStream& base, int shards) {
  if (n_samples < 1)
    throw InvariantViolationError("need at least one sample");
  if (shards < 1) throw InvariantViolationError("need at least one shard");

  std::int64_t hits = 0;
  if (shards == 1) {
    hits = count_eligible(p, q, mode, n_samples, base.split(0));
  } else {
    // Sample counts per shard are fixed by (n_samples, shards) alone, and
    // each shard owns a split substream, so the merged count is
    // deterministic for a fixed (seed, shard count).
    std::vector<std::int64_t> partial(shards, 0);
    std::vector<std::thread> workers;
    workers.reserve(shards);
    const std::int64_t chunk = n_samples / shards;
    for (int s = 0; s < shards; ++s) {
      const std::int64_t mine = chunk + (s < n_samples % shards ? 1 : 0);
      workers.emplace_back([&partial, s, p, q, mode, mine, &base] {
        partial[s] = count_eligible(p, q, mode, mine, base.split(s));
      });
    }
    for (auto& w : workers) w.join();
    for (std::int64_t c : partial) hits += c;
  }

  ProportionEstimate est;
  est.n_samples = n_samples;
  est.estimate = static_cast<double>(hits) / static_cast<double>(n_samples);
  est.std_error =
      std::sqrt(est.estimate * (1.0 - est.estimate) / n_samples);
  est.analytic = mode == ProportionMode::kSelf ? self_coupling_proportion(p)
                                               : pair_proportion(p, q);
  return est;
}

std::pair<Marginal, Marginal> eligible_pair(const EligiblePairRecipe& recipe) {
  const int p = static_cast<int>(recipe.row_base.size());
  const int q = static_cast<int>(recipe.col_base.size());
  if (p < 1 || q < 1) throw EmptyMarginalError("recipe bases are empty");
  const double alpha = recipe.alpha;
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw InvariantViolationError("alpha must lie in [0, 1]");

  std::vector<double> mu(p), nu(q);
  for (int u = 0; u < p; ++u) {
    mu[u] = alpha / p + (1.0 - alpha) * recipe.row_base[u];
    if (!(mu[u] > 0.0))
      throw ZeroWeightError(
          "alpha = 0 with a zero base coordinate gives a zero weight");
  }
  for (int v = 0; v < q; ++v) {
    nu[v] = (1.0 - alpha) / q + alpha * recipe.col_base[v];
    if (!(nu[v] > 0.0))
      throw ZeroWeightError(
          "alpha = 1 with a zero base coordinate gives a zero weight");
  }
  return {Marginal::from_weights(mu), Marginal::from_weights(nu)};
}

Marginal eligible_self(std::span<const double> base) {
  const int p = static_cast<int>(base.size());
  if (p < 1) throw EmptyMarginalError("base distribution is empty");
  std::vector<double> mu(p);
  for (int u = 0; u < p; ++u) mu[u] = 1.0 / (2.0 * p) + base[u] / 2.0;
  return Marginal::from_weights(mu);
}

std::optional<double> alpha_of(const Marginal& mu, const Marginal& nu) {
  const int p = mu.size(), q = nu.size();
  const double alpha = p * mu.min_weight();
  if (nu.min_weight() >= (1.0 - alpha) / q - tol::kSignEps) return alpha;
  return std::nullopt;
}

}  // namespace ioc
