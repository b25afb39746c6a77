// Copyright 2026 The sgdual Authors
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

#include <cstdint>

#include <benchmark/benchmark.h>

#include "sgdual/rng.hpp"

namespace {

using namespace sgdual;

void BM_PhiloxBlock(benchmark::State& state) {
    Philox4x32::Counter counter{0, 0, 0, 0};
    const Philox4x32::Key key{42, 0};
    for (auto _ : state) {
        counter[0] += 1;
        benchmark::DoNotOptimize(Philox4x32::block(counter, key));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxBlock);

void BM_Uniform01(benchmark::State& state) {
    TrialRng rng(7, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.uniform01());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Uniform01);

void BM_Bernoulli(benchmark::State& state) {
    TrialRng rng(7, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.bernoulli(0.75));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Bernoulli);

// Cost of opening a fresh per-trial stream and taking one draw, the pattern
// the runner executes once per trial.
void BM_TrialStreamSetup(benchmark::State& state) {
    std::uint64_t trial = 0;
    for (auto _ : state) {
        TrialRng rng(7, trial++);
        benchmark::DoNotOptimize(rng.uniform01());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TrialStreamSetup);

}  // namespace
