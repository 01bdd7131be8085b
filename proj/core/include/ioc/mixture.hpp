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

#include <optional>
#include <utility>
#include <vector>

#include "ioc/marginal.hpp"
#include "ioc/matrix.hpp"
#include "ioc/random_stream.hpp"

namespace ioc {

/// Three-component product-mixture form of the balanced coupling, valid
/// exactly when the margin feasibility condition holds:
///
///   pi_plus = w_row * (row residual x uniform on columns)
///           + w_col * (uniform on rows x column residual)
///           + w_uniform * (uniform on the whole grid)
///
/// The residual distributions concentrate each margin's mass above its
/// minimum; a component whose weight vanishes carries no distribution.
struct MixtureDecomposition {
  int p = 0;
  int q = 0;
  double row_weight = 0.0;      // 1 - p * mu_min
  double col_weight = 0.0;      // 1 - q * nu_min
  double uniform_weight = 0.0;  // p * mu_min + q * nu_min - 1
  std::optional<std::vector<double>> row_residual;  // (mu_u - mu_min)/(1 - p mu_min)
  std::optional<std::vector<double>> col_residual;  // (nu_v - nu_min)/(1 - q nu_min)
};

/// Decomposes the balanced coupling of a feasible pair. Throws
/// ConditionHViolatedError when the margins are not feasible (the bracket
/// terms would be negative and no mixture exists).
MixtureDecomposition decompose(const Marginal& mu, const Marginal& nu);

/// Rebuilds the full p x q table from the decomposition; equals the
/// balanced coupling entrywise.
Matrix reconstruct(const MixtureDecomposition& d);

struct MixtureDraw {
  int row = 0;
  int col = 0;
  int component = 0;  // 1 = row residual, 2 = column residual, 3 = uniform
};

/// Draws one (u, v) cell, in sorted order, distributed exactly as the
/// balanced coupling: pick a component by its weight, then sample the
/// product distribution of that component. Categorical choices use a
/// single uniform draw through the inverse CDF, so replay under a fixed
/// stream is deterministic.
MixtureDraw draw_detailed(const MixtureDecomposition& d, RandomStream& rng);
std::pair<int, int> draw(const MixtureDecomposition& d, RandomStream& rng);

}  // namespace ioc
