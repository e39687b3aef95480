// Copyright 2026 The ipfpp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "ipfpp/coupling.h"
#include "ipfpp/fpp.h"
#include "ipfpp/invasion.h"
#include "ipfpp/lattice.h"
#include "ipfpp/randomness.h"

namespace ipfpp {
namespace {

void RadiusArgs(benchmark::internal::Benchmark* b) {
  for (int r : {10, 30, 100, 300}) b->Arg(r);
}

void BM_BuildRegion(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_region(L1Ball{state.range(0)}, 2));
}
BENCHMARK(BM_BuildRegion)->Apply(RadiusArgs)->Unit(benchmark::kMicrosecond);

void BM_Weights(benchmark::State& state) {
  const Region region = build_region(L1Ball{state.range(0)}, 2);
  std::uint64_t trial = 0;
  for (auto _ : state) benchmark::DoNotOptimize(EdgeWeights::FromConfiguration(Configuration(1, trial++), region));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(region.edge_count()));
}
BENCHMARK(BM_Weights)->Apply(RadiusArgs)->Unit(benchmark::kMicrosecond);

void BM_Invade(benchmark::State& state) {
  const Region region = build_region(L1Ball{state.range(0)}, 2);
  const EdgeWeights w = EdgeWeights::FromConfiguration(Configuration(1, 0), region);
  for (auto _ : state) benchmark::DoNotOptimize(invade(w, region));
}
BENCHMARK(BM_Invade)->Apply(RadiusArgs)->Unit(benchmark::kMicrosecond);

void BM_Dijkstra(benchmark::State& state) {
  const Region region = build_region(L1Ball{state.range(0)}, 2);
  const EdgeWeights w = EdgeWeights::FromConfiguration(Configuration(1, 0), region);
  const double k = k_param(static_cast<std::int64_t>(region.edge_count()), 0.01);
  PassageTimeSolver solver(region);
  for (auto _ : state) benchmark::DoNotOptimize(solver.Run(w, k).boundary_time);
}
BENCHMARK(BM_Dijkstra)->Apply(RadiusArgs)->Unit(benchmark::kMicrosecond);

void BM_CoupledTrial(benchmark::State& state) {
  const Region region = build_region(L1Ball{state.range(0)}, 2);
  const EdgeWeights w = EdgeWeights::FromConfiguration(Configuration(1, 0), region);
  const CouplingParams params = CouplingParams::Theorem(static_cast<std::int64_t>(region.edge_count()), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(run_coupled(w, region, state.range(0) / 2, params));
}
BENCHMARK(BM_CoupledTrial)->Arg(10)->Arg(30)->Arg(100)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace ipfpp

BENCHMARK_MAIN();
