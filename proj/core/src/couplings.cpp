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

#include "ioc/couplings.hpp"

namespace ioc {

Coupling independence_coupling(const Marginal& mu, const Marginal& nu) {
  const int p = mu.size(), q = nu.size();
  Matrix m(p, q);
  for (int u = 0; u < p; ++u)
    for (int v = 0; v < q; ++v) m(u, v) = mu.weight(u) * nu.weight(v);
  return Coupling::from_matrix(
      SignedMatrix(std::move(m), mu.weights(), nu.weights()));
}

SignedMatrix indeterminacy_coupling(const Marginal& mu, const Marginal& nu) {
  const int p = mu.size(), q = nu.size();
  const double uniform = 1.0 / (static_cast<double>(p) * q);
  Matrix m(p, q);
  for (int u = 0; u < p; ++u)
    for (int v = 0; v < q; ++v)
      m(u, v) = mu.weight(u) / q + nu.weight(v) / p - uniform;
  return SignedMatrix(std::move(m), mu.weights(), nu.weights());
}

double index_of_coincidence(const Matrix& m) {
  double s = 0.0;
  for (double x : m.data()) s += x * x;
  return s;
}

double index_of_coincidence(const SignedMatrix& m) {
  return index_of_coincidence(m.entries());
}

double index_of_coincidence(const Coupling& c) {
  return index_of_coincidence(c.entries());
}

bool condition_h_min(double mu_min, int p, double nu_min, int q) {
  const double corner_value =
      mu_min / q + nu_min / p - 1.0 / (static_cast<double>(p) * q);
  return corner_value >= -tol::kSignEps;
}

bool condition_h(const Marginal& mu, const Marginal& nu) {
  return condition_h_min(mu.min_weight(), mu.size(), nu.min_weight(),
                         nu.size());
}

bool is_monotone(const Matrix& m) {
  for (int u = 0; u < m.rows(); ++u)
    for (int v = 0; v + 1 < m.cols(); ++v)
      if (m(u, v + 1) < m(u, v) - tol::kSignEps) return false;
  for (int v = 0; v < m.cols(); ++v)
    for (int u = 0; u + 1 < m.rows(); ++u)
      if (m(u + 1, v) < m(u, v) - tol::kSignEps) return false;
  return true;
}

bool is_monotone(const SignedMatrix& m) { return is_monotone(m.entries()); }

std::vector<int> zero_prefix_counts(const Matrix& m, double eps) {
  std::vector<int> counts(m.rows(), 0);
  for (int u = 0; u < m.rows(); ++u) {
    int v = 0;
    while (v < m.cols() && m(u, v) <= eps) ++v;
    counts[u] = v;
  }
  return counts;
}

bool is_zero_staircase(const Matrix& m, double eps) {
  const auto counts = zero_prefix_counts(m, eps);
  for (int u = 0; u < m.rows(); ++u) {
    if (u > 0 && counts[u] > counts[u - 1]) return false;
    // nothing at or below eps may appear after the leading run
    for (int v = counts[u]; v < m.cols(); ++v)
      if (m(u, v) <= eps) return false;
  }
  return true;
}

}  // namespace ioc
