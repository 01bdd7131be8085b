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

#include <span>
#include <vector>

namespace ioc {

/// A strictly positive probability vector, stored in ascending order with
/// the sort permutation retained so results can be mapped back to the
/// caller's original indexing.
///
/// All closed forms in this library assume ascending weights; sorting here
/// once keeps that assumption out of every downstream formula.
class Marginal {
 public:
  /// Validates and sorts raw weights.
  ///
  /// Weights must be strictly positive and sum to 1 within 1e-9; they are
  /// renormalized to machine precision after acceptance. Ties sort stably
  /// by original index.
  static Marginal from_weights(std::span<const double> raw);

  /// The uniform law on n points.
  static Marginal uniform(int n);

  int size() const { return static_cast<int>(weights_.size()); }

  /// Ascending weights.
  const std::vector<double>& weights() const { return weights_; }

  double weight(int i) const { return weights_[i]; }

  /// Smallest weight (first entry; the vector is ascending).
  double min_weight() const { return weights_.front(); }

  /// Maps sorted index -> original index.
  const std::vector<int>& sort_permutation() const { return perm_; }

  /// Weights restored to the caller's original order.
  std::vector<double> original_order() const;

 private:
  Marginal(std::vector<double> weights, std::vector<int> perm)
      : weights_(std::move(weights)), perm_(std::move(perm)) {}

  std::vector<double> weights_;
  std::vector<int> perm_;
};

}  // namespace ioc
