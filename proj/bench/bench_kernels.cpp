// Copyright 2026 The cvbell Authors
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

// Serial reference kernels against their OpenMP counterparts.  Thread count
// follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <numbers>

#include "cvbell/kernels.hpp"
#include "cvbell/quad_bell.hpp"

namespace {

using namespace cvbell;

const QuadratureGrid& bench_grid() {
  static const QuadratureGrid g = QuadratureGrid::standard();
  return g;
}

void BM_HermiteTable_Serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::hermite_table(bench_grid().points(), 60));
}
void BM_HermiteTable_Omp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::hermite_table(bench_grid().points(), 60));
}

void BM_WeightedGram_Serial(benchmark::State& st) {
  const auto table = kernels::serial::hermite_table(bench_grid().points(), 60);
  const auto w = bench_grid().trapezoid_weights();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::weighted_gram(table, w));
}
void BM_WeightedGram_Omp(benchmark::State& st) {
  const auto table = kernels::serial::hermite_table(bench_grid().points(), 60);
  const auto w = bench_grid().trapezoid_weights();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::weighted_gram(table, w));
}

void BM_JointDensity_Serial(benchmark::State& st) {
  const auto table = kernels::serial::hermite_table(bench_grid().points(), 60);
  const auto s = pair_coherent(1.1);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::joint_density(table, s.coeffs, -std::numbers::pi / 4));
}
void BM_JointDensity_Omp(benchmark::State& st) {
  const auto table = kernels::serial::hermite_table(bench_grid().points(), 60);
  const auto s = pair_coherent(1.1);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::joint_density(table, s.coeffs, -std::numbers::pi / 4));
}

void BM_DifferenceKernel_Serial(benchmark::State& st) {
  const double alpha = static_cast<double>(st.range(0));
  const int n_out = static_cast<int>(std::ceil(alpha * alpha + 8 * alpha)) + 12;
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::difference_kernel(alpha, 12, n_out));
}
void BM_DifferenceKernel_Omp(benchmark::State& st) {
  const double alpha = static_cast<double>(st.range(0));
  const int n_out = static_cast<int>(std::ceil(alpha * alpha + 8 * alpha)) + 12;
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::difference_kernel(alpha, 12, n_out));
}

void BM_ChStatistic_Reference(benchmark::State& st) {
  const auto s = pair_coherent(1.1);
  for (auto _ : st) {
    benchmark::DoNotOptimize(ch_statistic_reference(s, AngleQuad::reference(), NoiseModel{}, bench_grid()));
  }
}
void BM_ChStatistic_Fast(benchmark::State& st) {
  const auto s = pair_coherent(1.1);
  for (auto _ : st) benchmark::DoNotOptimize(ch_statistic(s, AngleQuad::reference(), NoiseModel{}, bench_grid()));
}

}  // namespace

BENCHMARK(BM_HermiteTable_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HermiteTable_Omp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightedGram_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightedGram_Omp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JointDensity_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JointDensity_Omp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DifferenceKernel_Serial)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DifferenceKernel_Omp)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChStatistic_Reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChStatistic_Fast)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
