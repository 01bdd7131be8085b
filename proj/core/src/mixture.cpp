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

#include "ioc/mixture.hpp"

#include <cmath>

#include "ioc/couplings.hpp"
#include "ioc/errors.hpp"
#include "ioc/tolerances.hpp"

namespace ioc {

namespace {

// Weights within kSignEps of zero collapse to exact zero so the matching
// component can be dropped instead of renormalizing by ~0.
double snap(double w) { return std::abs(w) < tol::kSignEps ? 0.0 : w; }

int inverse_cdf(const std::vector<double>& pmf, double u) {
  double cum = 0.0;
  const int n = static_cast<int>(pmf.size());
  for (int i = 0; i < n; ++i) {
    cum += pmf[i];
    if (u <= cum) return i;
  }
  return n - 1;  // u beyond accumulated rounding error
}

}  // namespace

MixtureDecomposition decompose(const Marginal& mu, const Marginal& nu) {
  if (!condition_h(mu, nu))
    throw ConditionHViolatedError(
        "margins do not admit the nonnegative balanced coupling");
  MixtureDecomposition d;
  d.p = mu.size();
  d.q = nu.size();
  d.row_weight = snap(1.0 - d.p * mu.min_weight());
  d.col_weight = snap(1.0 - d.q * nu.min_weight());
  d.uniform_weight = snap(d.p * mu.min_weight() + d.q * nu.min_weight() - 1.0);

  if (d.row_weight > 0.0) {
    std::vector<double> residual(d.p);
    for (int u = 0; u < d.p; ++u)
      residual[u] = (mu.weight(u) - mu.min_weight()) / d.row_weight;
    d.row_residual = std::move(residual);
  }
  if (d.col_weight > 0.0) {
    std::vector<double> residual(d.q);
    for (int v = 0; v < d.q; ++v)
      residual[v] = (nu.weight(v) - nu.min_weight()) / d.col_weight;
    d.col_residual = std::move(residual);
  }
  return d;
}

Matrix reconstruct(const MixtureDecomposition& d) {
  Matrix m(d.p, d.q);
  for (int u = 0; u < d.p; ++u)
    for (int v = 0; v < d.q; ++v) {
      double x = d.uniform_weight / (static_cast<double>(d.p) * d.q);
      if (d.row_residual) x += d.row_weight * (*d.row_residual)[u] / d.q;
      if (d.col_residual) x += d.col_weight * (*d.col_residual)[v] / d.p;
      m(u, v) = x;
    }
  return m;
}

MixtureDraw draw_detailed(const MixtureDecomposition& d, RandomStream& rng) {
  MixtureDraw out;
  const double pick = rng.uniform();
  if (pick <= d.row_weight && d.row_residual) {
    out.component = 1;
    out.row = inverse_cdf(*d.row_residual, rng.uniform());
    out.col = rng.uniform_int(d.q);
  } else if (pick <= d.row_weight + d.col_weight && d.col_residual) {
    out.component = 2;
    out.row = rng.uniform_int(d.p);
    out.col = inverse_cdf(*d.col_residual, rng.uniform());
  } else {
    out.component = 3;
    out.row = rng.uniform_int(d.p);
    out.col = rng.uniform_int(d.q);
  }
  return out;
}

std::pair<int, int> draw(const MixtureDecomposition& d, RandomStream& rng) {
  const MixtureDraw full = draw_detailed(d, rng);
  return {full.row, full.col};
}

}  // namespace ioc
