// Copyright 2026 The coopnet Authors
//
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

// Micro-benchmarks for the exact-arithmetic hot paths: the subset (Möbius)
// transform, weighted Shapley from dividends, the autonomous-part fixpoint
// over every coalition, the full permission restriction, and an exhaustive
// deviation check. Player counts are benchmark arguments, so scaling in the
// 2^n coalition lattice is visible directly.

#include <cstdint>
#include <random>

#include "benchmark/benchmark.h"

#include "coopnet/dic.hpp"

namespace coopnet {
namespace {

Game dense_game(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<Rational> table(size, Rational(0));
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    table[mask] = Rational(static_cast<int>(rng() % 64)) / Rational(7);
  }
  // Monotone repair: lift each coalition to the max of its one-smaller sets.
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        const Rational& below = table[mask & ~(std::uint64_t{1} << i)];
        if (table[mask] < below) table[mask] = below;
      }
    }
  }
  return Game::explicit_table(n, std::move(table));
}

void BM_DividendTransform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Game game = dense_game(n, 1);
  for (auto _ : state) {
    DividendMap d = dividends(game);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_DividendTransform)->Arg(8)->Arg(10)->Arg(12);

void BM_WeightedShapley(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Game game = dense_game(n, 2);
  std::mt19937_64 rng(3);
  Weights weights = random_weights(rng, n);
  for (auto _ : state) {
    Allocation value = weighted_shapley(game, weights);
    benchmark::DoNotOptimize(value);
  }
}
BENCHMARK(BM_WeightedShapley)->Arg(8)->Arg(10)->Arg(12);

void BM_AutonomousPartAllCoalitions(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  DiffusionGraph graph = random_general_dag(rng, n);
  MixedPermissionStructure structure = random_structure(rng, graph);
  const std::uint64_t size = std::uint64_t{1} << n;
  for (auto _ : state) {
    for (std::uint64_t mask = 0; mask < size; ++mask) {
      benchmark::DoNotOptimize(autonomous_part(Coalition(mask), structure));
    }
  }
}
BENCHMARK(BM_AutonomousPartAllCoalitions)->Arg(8)->Arg(10)->Arg(12);

void BM_PermissionRestriction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  DiffusionGraph graph = random_general_dag(rng, n);
  MixedPermissionStructure structure = random_structure(rng, graph);
  Game game = random_game(rng, n);
  for (auto _ : state) {
    Game restricted = permission_restriction(game, structure);
    benchmark::DoNotOptimize(restricted);
  }
}
BENCHMARK(BM_PermissionRestriction)->Arg(8)->Arg(10)->Arg(12);

void BM_CheckDic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(6);
  DiffusionGraph graph = random_tree_graph(rng, n);
  Game game = random_game(rng, n);
  MechanismSpec spec{MechanismSpec::Mode::TreeFamily,
                     WeightFunction::geometric(Rational(1) / Rational(2))};
  for (auto _ : state) {
    DicReport report = check_dic(spec, graph, game);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_CheckDic)->Arg(6)->Arg(8)->Arg(10);

}  // namespace
}  // namespace coopnet

BENCHMARK_MAIN();
