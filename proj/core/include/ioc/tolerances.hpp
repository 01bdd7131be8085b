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

namespace ioc::tol {

/// Sign tolerance: entries in (-kSignEps, 0) are numerical dust, not
/// genuine negativity, and are clamped to zero at output boundaries.
inline constexpr double kSignEps = 1e-12;

/// Weight-sum tolerance after internal renormalization.
inline constexpr double kSumEps = 1e-12;

/// Accepted deviation of raw input weights from unit sum. Inputs further
/// away are rejected rather than silently renormalized.
inline constexpr double kInputSumTol = 1e-9;

/// Row/column marginal residual tolerance for matrices with prescribed sums.
inline constexpr double kMarginalTol = 1e-10;

/// Lagrangian stationarity residual tolerance.
inline constexpr double kStationarityTol = 1e-9;

/// Complementary slackness tolerance (entrywise |r * pi|).
inline constexpr double kSlacknessTol = 1e-10;

}  // namespace ioc::tol
