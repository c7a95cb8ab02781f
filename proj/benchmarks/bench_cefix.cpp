// Copyright 2026 The cefix Authors.
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

#include <benchmark/benchmark.h>

#include "cefix/cefix.hpp"

namespace {

using namespace cefix;

void BM_RunPairedExample(benchmark::State& state) {
  const auto sys = example1_system();
  const Quadruple q{Point{97.3}, Point{-55.5}, CElement(Point{97.3}), CElement(Point{-55.5})};
  for (auto _ : state) {
    auto run = run_paired(sys, q, 1000, 1e-9);
    benchmark::DoNotOptimize(run.report.steps);
  }
}
BENCHMARK(BM_RunPairedExample);

void BM_VerifyContraction(benchmark::State& state) {
  const auto sys = example1_system();
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto rep = verify_contraction(sys, samples, 1);
    benchmark::DoNotOptimize(rep.min_residual);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VerifyContraction)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_TailSupTable(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PairwiseFn f = [](std::size_t i, std::size_t j) {
    return 1.0 / static_cast<double>(i + j) + 0.5 / static_cast<double>(i * j);
  };
  for (auto _ : state) {
    TailSupTable t(f, n);
    benchmark::DoNotOptimize(t.grid_min());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TailSupTable)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);

void BM_SetDistanceEstimate(benchmark::State& state) {
  const SetPair p{MetricSpace::real_line(), make_interval(Interval::closed(0, 1)),
                  make_interval(Interval::closed(3, 4)), std::nullopt};
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto d = set_distance(p, samples, 1);
    benchmark::DoNotOptimize(d.value);
  }
}
BENCHMARK(BM_SetDistanceEstimate)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_CyclicSolve(benchmark::State& state) {
  const auto ct = affine_cyclic_example();
  for (auto _ : state) {
    auto r = cyclic3_solve(ct, {Point{0.0, 0.0}, Point{1.0, 1.0}, Point{0.25, 2.0}}, 2000, 1e-10);
    benchmark::DoNotOptimize(r.decided);
  }
}
BENCHMARK(BM_CyclicSolve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
