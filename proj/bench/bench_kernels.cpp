/*
 * Copyright 2026 The Pfafflow Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference loops against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "pfafflow/matrixpp.hpp"
#include "pfafflow/measure.hpp"

namespace {

using namespace pfafflow;

exec::Mode mode_of(const benchmark::State& state) {
    return state.range(0) == 0 ? exec::Mode::serial : exec::Mode::parallel;
}

void BM_RhoBrute(benchmark::State& state) {
    const measure::SpecPair spec{{ratio(2, 5), ratio(1, 5), ratio(1, 10)}, {ratio(3, 10), ratio(1, 10)}};
    const int cutoff = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(measure::rho_brute({2, 1}, spec, cutoff, mode_of(state)));
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_RhoBrute)->ArgsProduct({{0, 1}, {20, 40}})->Unit(benchmark::kMillisecond);

void BM_CorrDirect(benchmark::State& state) {
    matrixpp::FiniteSpace space;
    const int points = static_cast<int>(state.range(1));
    for (int i = 1; i <= points; ++i) {
        space.points.emplace_back(i);
        space.weights.emplace_back(ratio(1, i));
    }
    const matrixpp::ProcessSpec spec{5, space};
    for (auto _ : state) benchmark::DoNotOptimize(matrixpp::corr_direct(spec, {1, 3}, mode_of(state)));
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_CorrDirect)->ArgsProduct({{0, 1}, {6, 9}})->Unit(benchmark::kMillisecond);

void BM_CorrPfaffian(benchmark::State& state) {
    matrixpp::FiniteSpace space;
    for (int i = 1; i <= 9; ++i) {
        space.points.emplace_back(i);
        space.weights.emplace_back(ratio(1, i));
    }
    const matrixpp::Kernel kernel(matrixpp::ProcessSpec{5, space});
    for (auto _ : state) benchmark::DoNotOptimize(matrixpp::corr_pf(kernel, {1, 3}));
}
BENCHMARK(BM_CorrPfaffian)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
