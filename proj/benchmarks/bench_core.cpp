// Copyright 2026 The trigzeros Authors.
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

#include <vector>

#include "trigzeros/coeffs.hpp"
#include "trigzeros/rice.hpp"
#include "trigzeros/rng.hpp"
#include "trigzeros/sincproc.hpp"
#include "trigzeros/trigpoly.hpp"
#include "trigzeros/zerocount.hpp"

using namespace trigzeros;

namespace {

TrigPoly gaussian_poly(int N, std::uint64_t id) {
  RngStream s = make_stream(42, id);
  return TrigPoly::from_packed(sample_coeffs(CoeffDist::gaussian(), static_cast<std::size_t>(N), s));
}

void BM_EvalBatch(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const TrigPoly p = gaussian_poly(N, 0);
  std::vector<double> grid(10000);
  for (std::size_t j = 0; j < grid.size(); ++j) grid[j] = 50.0 * j / (grid.size() - 1);
  for (auto _ : state) benchmark::DoNotOptimize(eval_batch(p, grid, 0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}
BENCHMARK(BM_EvalBatch)->Arg(50)->Arg(100)->Arg(1000);

void BM_CountScan(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  std::uint64_t id = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const TrigPoly p = gaussian_poly(N, id++);
    state.ResumeTiming();
    benchmark::DoNotOptimize(count_scan(p, {0.0, 50.0}).count);
  }
}
BENCHMARK(BM_CountScan)->Arg(50)->Arg(100)->Arg(200);

void BM_CountCompanion(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  std::uint64_t id = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const TrigPoly p = gaussian_poly(N, id++);
    state.ResumeTiming();
    benchmark::DoNotOptimize(count_companion(p, {0.0, 50.0}).count);
  }
}
BENCHMARK(BM_CountCompanion)->Arg(8)->Arg(32)->Arg(64);

void BM_SpectralCount(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  std::uint64_t id = 0;
  for (auto _ : state) {
    RngStream s = make_stream(43, id++);
    benchmark::DoNotOptimize(count_zeros_W(sample_spectral(M, s), {0.0, 50.0}).count);
  }
}
BENCHMARK(BM_SpectralCount)->Arg(128)->Arg(512);

void BM_TwoPointIntensity(benchmark::State& state) {
  double t2 = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(two_point_intensity(0.0, t2));
    t2 = t2 < 9.9 ? t2 + 0.013 : 0.1;
  }
}
BENCHMARK(BM_TwoPointIntensity);

}  // namespace

BENCHMARK_MAIN();
