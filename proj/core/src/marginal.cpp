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

#include "ioc/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ioc/errors.hpp"
#include "ioc/tolerances.hpp"

namespace ioc {

Marginal Marginal::from_weights(std::span<const double> raw) {
  if (raw.empty()) throw EmptyMarginalError("marginal has no weights");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i] > 0.0))
      throw NonPositiveWeightError("weight " + std::to_string(i) + " is " +
                                   std::to_string(raw[i]) +
                                   "; weights must be strictly positive");
  }
  const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (std::abs(total - 1.0) > tol::kInputSumTol)
    throw NotNormalizedError("weights sum to " + std::to_string(total) +
                             ", more than 1e-9 away from 1");

  std::vector<int> perm(raw.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&raw](int a, int b) { return raw[a] < raw[b]; });

  std::vector<double> weights(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) weights[i] = raw[perm[i]] / total;
  return Marginal(std::move(weights), std::move(perm));
}

Marginal Marginal::uniform(int n) {
  if (n < 1) throw EmptyMarginalError("uniform law needs at least one point");
  std::vector<double> weights(n, 1.0 / n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  return Marginal(std::move(weights), std::move(perm));
}

std::vector<double> Marginal::original_order() const {
  std::vector<double> out(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i)
    out[perm_[i]] = weights_[i];
  return out;
}

}  // namespace ioc
