// Copyright 2026 The Pragsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include <cstddef>
#include <random>
#include <vector>

#include "pragsynth/consistent_set.h"
#include "pragsynth/grid_dsl.h"
#include "pragsynth/grid_game.h"
#include "pragsynth/pragmatics.h"

namespace pragsynth {
namespace {

const grid::GridGame& Game() {
  static const grid::GridGame game = grid::BuildGridGame();
  return game;
}

// Examples drawn from one pattern, so every prefix stays consistent.
std::vector<ExampleSequence> Queries(std::size_t n_examples, std::size_t count) {
  const grid::GridGame& game = Game();
  std::mt19937_64 rng(11);
  std::vector<ExampleSequence> out;
  for (std::size_t q = 0; q < count; ++q) {
    const grid::Pattern& p = game.space.patterns[rng() % game.space.size()];
    ExampleSequence d;
    while (d.size() < n_examples) {
      const int x = static_cast<int>(rng() % 7), y = static_cast<int>(rng() % 7);
      const UtteranceId u = grid::ExampleId({x, y, grid::At(p, x, y)});
      if (!d.Contains(u)) d.Append(u);
    }
    out.push_back(d);
  }
  return out;
}

void BM_L1ColdCache(benchmark::State& state) {
  const MeaningMatrix& m = Game().matrix;
  const auto queries = Queries(static_cast<std::size_t>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) {
    ConsistentSetCache cache;
    benchmark::DoNotOptimize(L1Posterior(m, queries[i++ % queries.size()], cache));
  }
}
BENCHMARK(BM_L1ColdCache)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_L1WarmCache(benchmark::State& state) {
  const MeaningMatrix& m = Game().matrix;
  const auto queries = Queries(static_cast<std::size_t>(state.range(0)), 64);
  ConsistentSetCache cache;
  for (const auto& d : queries) L1Posterior(m, d, cache);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(L1Posterior(m, queries[i++ % queries.size()], cache));
  }
}
BENCHMARK(BM_L1WarmCache)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_L0(benchmark::State& state) {
  const MeaningMatrix& m = Game().matrix;
  const auto queries = Queries(static_cast<std::size_t>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) {
    ConsistentSetCache cache;
    benchmark::DoNotOptimize(L0Posterior(m, queries[i++ % queries.size()], cache));
  }
}
BENCHMARK(BM_L0)->DenseRange(1, 5)->Unit(benchmark::kMicrosecond);

void BM_ConsistentSetUncached(benchmark::State& state) {
  const MeaningMatrix& m = Game().matrix;
  const auto queries = Queries(static_cast<std::size_t>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ConsistentSetUncached(m, queries[i++ % queries.size()].ids()));
  }
}
BENCHMARK(BM_ConsistentSetUncached)->DenseRange(1, 5);

void BM_ConsistentSetCached(benchmark::State& state) {
  const MeaningMatrix& m = Game().matrix;
  const auto queries = Queries(static_cast<std::size_t>(state.range(0)), 64);
  ConsistentSetCache cache;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cache.Get(m, queries[i++ % queries.size()].ids()).count());
  }
}
BENCHMARK(BM_ConsistentSetCached)->DenseRange(1, 5);

void BM_EnumeratePrograms(benchmark::State& state) {
  for (auto _ : state) {
    std::size_t n = 0;
    grid::EnumeratePrograms([&](const grid::Program& p) { n += grid::Render(p)[0] != grid::Symbol::kPebble; });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EnumeratePrograms)->Unit(benchmark::kMillisecond);

void BM_BuildCanonicalSpace(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(grid::BuildCanonicalSpace().size());
}
BENCHMARK(BM_BuildCanonicalSpace)->Unit(benchmark::kMillisecond);

void BM_BuildGridMatrix(benchmark::State& state) {
  const grid::CanonicalSpace& space = Game().space;
  for (auto _ : state) benchmark::DoNotOptimize(grid::BuildGridMatrix(space).n_hypotheses());
}
BENCHMARK(BM_BuildGridMatrix)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pragsynth

BENCHMARK_MAIN();
