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

#pragma once

#include "sgdual/config.hpp"
#include "sgdual/stats.hpp"

namespace sgdual {

struct RunOptions {
    /// Worker threads for trial execution. The report is identical for any
    /// value: trial k always uses the random stream derived from
    /// (seed, k), and aggregation is a commutative count merge.
    int workers = 1;
};

/// Execute config.trials trials, classify and aggregate them, and return
/// the finished report. Writes no files; serialization and output paths
/// are the caller's business. Throws on invalid configs; a failed
/// conservation audit is reported, not thrown.
RunReport run(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace sgdual
