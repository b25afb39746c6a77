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

#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "sgdual/sensor.hpp"
#include "sgdual/stages.hpp"
#include "sgdual/stats.hpp"

namespace {

using namespace sgdual;

std::vector<ClickRecord> records_for(int stage) {
    std::vector<ClickRecord> records;
    for (const TaxonomyRow& row : enumerate_taxonomy(stage)) {
        records.push_back(parse_pattern(row.pattern, stage));
    }
    return records;
}

void BM_Classify(benchmark::State& state, int stage) {
    StageConfig config;
    config.stage = stage;
    config.initial = prepare_qubit(std::numbers::pi / 4.0, 0.0);
    if (stage == 3) config.em = default_physics();
    const std::vector<ClickRecord> records = records_for(stage);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(records[i], config));
        i = (i + 1) % records.size();
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK_CAPTURE(BM_Classify, splitter, 1);
BENCHMARK_CAPTURE(BM_Classify, full_loop, 2);
BENCHMARK_CAPTURE(BM_Classify, double_loop, 3);

void BM_FormatPattern(benchmark::State& state) {
    const std::vector<ClickRecord> records = records_for(3);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(format_pattern(records[i]));
        i = (i + 1) % records.size();
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FormatPattern);

void BM_ParsePattern(benchmark::State& state) {
    std::vector<std::string> patterns;
    for (const TaxonomyRow& row : enumerate_taxonomy(3)) patterns.push_back(row.pattern);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_pattern(patterns[i], 3));
        i = (i + 1) % patterns.size();
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ParsePattern);

void BM_ChiSquareTail(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        x += 0.1;
        if (x > 40.0) x = 0.1;
        benchmark::DoNotOptimize(chi_square_sf(x, 3));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ChiSquareTail);

}  // namespace
