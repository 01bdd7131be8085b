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

#include <benchmark/benchmark.h>

#include <utility>
#include <vector>

#include "ioc/couplings.hpp"
#include "ioc/measure.hpp"
#include "ioc/mixture.hpp"
#include "ioc/oracle.hpp"
#include "ioc/random_stream.hpp"
#include "ioc/solver.hpp"

namespace {

std::pair<ioc::Marginal, ioc::Marginal> instance(int p, int q,
                                                 std::uint64_t seed) {
  ioc::RandomStream rng(seed);
  auto mu = ioc::sample_simplex(p, rng);
  auto nu = ioc::sample_simplex(q, rng);
  return {std::move(mu), std::move(nu)};
}

void BM_Solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto [mu, nu] = instance(n, n, 42);
  ioc::SolveOptions opts;
  opts.check_invariants = false;
  for (auto _ : state) {
    auto sol = ioc::solve(mu, nu, opts);
    benchmark::DoNotOptimize(sol.pi_star.entries().data());
  }
}
BENCHMARK(BM_Solve)->RangeMultiplier(2)->Range(4, 64);

void BM_SolveChecked(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto [mu, nu] = instance(n, n, 42);
  for (auto _ : state) {
    auto sol = ioc::solve(mu, nu);
    benchmark::DoNotOptimize(sol.pi_star.entries().data());
  }
}
BENCHMARK(BM_SolveChecked)->RangeMultiplier(2)->Range(4, 16);

void BM_ProjectUniform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto [mu, nu] = instance(n, n, 43);
  for (auto _ : state) {
    auto c = ioc::project_uniform(mu, nu);
    benchmark::DoNotOptimize(c.entries().data());
  }
}
BENCHMARK(BM_ProjectUniform)->RangeMultiplier(2)->Range(2, 8);

void BM_MixtureDraw(benchmark::State& state) {
  ioc::RandomStream rng(7);
  const auto mu = ioc::eligible_self(
      ioc::sample_simplex(8, rng).original_order());
  const auto d = ioc::decompose(mu, mu);
  std::int64_t drawn = 0;
  for (auto _ : state) {
    auto uv = ioc::draw(d, rng);
    benchmark::DoNotOptimize(uv);
    ++drawn;
  }
  state.SetItemsProcessed(drawn);
}
BENCHMARK(BM_MixtureDraw);

void BM_EstimateProportion(benchmark::State& state) {
  const ioc::RandomStream base(11);
  for (auto _ : state) {
    auto est = ioc::estimate_proportion(4, 4, ioc::ProportionMode::kPair,
                                        100000, base);
    benchmark::DoNotOptimize(est.estimate);
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_EstimateProportion);

}  // namespace

BENCHMARK_MAIN();
